// Copyright 2026 The carshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Instance files:
//   {"k": 4, "model": "S", "stages": [{"il": 4, "ir": 4}, {"il": 0, "ir": 4}]}
//   {"k": 3, "model": "F", "stages": [{"seq": "LLRRL"}, {"seq": ""}]}

#include <filesystem>
#include <string>
#include <string_view>

#include "carshare/model.hpp"

namespace carshare {

/// Throws ModelError naming the offending field.
Instance parse_instance(std::string_view json_text);
Instance load_instance(const std::filesystem::path& path);

/// Compact canonical JSON (fixed key order, no whitespace).
std::string instance_to_json(const Instance& inst);

/// FNV-1a 64 over the canonical JSON, as 16 hex digits.
std::string instance_digest(const Instance& inst);

}  // namespace carshare
