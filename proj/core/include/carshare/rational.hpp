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

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace carshare {

/// Arbitrary-precision exact rational. All thresholds and expectations use it;
/// decision logic never touches floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Largest integer <= x.
std::int64_t floor_int(const Rational& x);
/// Smallest integer >= x.
std::int64_t ceil_int(const Rational& x);

bool is_integral(const Rational& x);

/// Parses "p/q", an integer, or a decimal literal such as "1.1" (read exactly
/// as 11/10). Throws std::invalid_argument on malformed input or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Renders as "p/q", always with an explicit denominator ("3/1" for 3).
std::string to_string(const Rational& x);

double to_double(const Rational& x);

}  // namespace carshare
