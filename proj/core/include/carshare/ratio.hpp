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

#include <compare>
#include <optional>
#include <string>

#include "carshare/rational.hpp"

namespace carshare {

/// OPT profit over ALG profit. 0/0 is 1 by convention; x/0 with x > 0 is an
/// infinite sentinel that compares above every finite ratio.
class Ratio {
 public:
  static Ratio of(const Rational& opt, const Rational& alg);
  static Ratio infinity() { return Ratio(std::nullopt); }
  explicit Ratio(Rational value) : value_(std::move(value)) {}

  bool infinite() const { return !value_.has_value(); }
  /// Throws std::logic_error when infinite.
  const Rational& value() const;

  /// "p/q", or "inf".
  std::string str() const;
  /// +infinity for the sentinel.
  double decimal() const;

  bool operator==(const Ratio& o) const { return value_ == o.value_; }
  std::strong_ordering operator<=>(const Ratio& o) const;

 private:
  explicit Ratio(std::optional<Rational> value) : value_(std::move(value)) {}
  std::optional<Rational> value_;
};

}  // namespace carshare
