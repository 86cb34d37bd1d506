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

#include "carshare/ratio.hpp"

#include <limits>
#include <stdexcept>

namespace carshare {

Ratio Ratio::of(const Rational& opt, const Rational& alg) {
  if (alg == 0) {
    return opt == 0 ? Ratio(Rational(1)) : infinity();
  }
  return Ratio(Rational(opt / alg));
}

const Rational& Ratio::value() const {
  if (!value_) throw std::logic_error("infinite ratio has no rational value");
  return *value_;
}

std::string Ratio::str() const { return value_ ? to_string(*value_) : "inf"; }

double Ratio::decimal() const {
  return value_ ? to_double(*value_) : std::numeric_limits<double>::infinity();
}

std::strong_ordering Ratio::operator<=>(const Ratio& o) const {
  if (infinite() || o.infinite()) {
    return static_cast<int>(infinite()) <=> static_cast<int>(o.infinite());
  }
  if (*value_ < *o.value_) return std::strong_ordering::less;
  if (*o.value_ < *value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace carshare
