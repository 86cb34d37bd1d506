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

// The acceptance suite, shared by the acceptance test binary and
// `carshare verify`. Every criterion is exact (tolerance 0) except the Monte
// Carlo one, and each carries a wall-clock limit that counts toward passing.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace carshare {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct Criterion {
  int id;
  const char* name;
  const char* summary;
  double limit_seconds;
};

/// The ten criteria in order.
std::span<const Criterion> acceptance_criteria();

/// Runs one criterion by id (1-based). Exceptions are caught and reported as
/// failures.
CriterionResult run_criterion(int id);

/// Runs the given ids, or every criterion when `ids` is empty.
std::vector<CriterionResult> run_acceptance(std::span<const int> ids = {});

/// "PASS [1] gba-tightness: detail", plus " (0.012 s / limit 1 s)" when
/// `with_time` is set.
std::string format_result(const CriterionResult& r, bool with_time);

/// Seed shared by the fuzz-based criteria.
inline constexpr std::uint64_t kAcceptanceSeed = 20260415;

}  // namespace carshare
