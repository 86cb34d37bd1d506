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

#include <ostream>
#include <string>

#include <doctest.h>

#include "carshare/model.hpp"
#include "carshare/rational.hpp"

namespace carshare {

inline Rational q(const char* text) { return parse_rational(text); }

inline RequestSeq seq(const std::string& text) {
  RequestSeq out;
  for (char c : text) out.push_back(c == 'L' ? Direction::L : Direction::R);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const StageDecision& d) {
  return os << "(" << d.gl << "," << d.gr << ")";
}

inline std::ostream& operator<<(std::ostream& os, const Allocation& a) {
  return os << "[" << a.at0 << "," << a.floating << "," << a.at1 << "]";
}

}  // namespace carshare
