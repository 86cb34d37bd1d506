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

#include "carshare/coin.hpp"

#include <stdexcept>

namespace carshare {

namespace {

void check_probability(const Rational& p) {
  if (p <= 0 || p >= 1) {
    throw std::domain_error("coin probability must lie strictly between 0 and 1, got " +
                            to_string(p));
  }
}

}  // namespace

bool SeededCoin::flip(const Rational& p) {
  check_probability(p);
  const BigInt num = numerator(p);
  const BigInt den = denominator(p);
  if (den > BigInt(UINT64_MAX)) {
    throw std::domain_error("coin denominator exceeds 64 bits");
  }
  const auto b = den.convert_to<std::uint64_t>();
  const auto a = num.convert_to<std::uint64_t>();
  // Rejection sampling keeps the draw uniform over [0, b) and portable.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % b);
  std::uint64_t draw = rng_();
  while (draw >= limit) draw = rng_();
  return draw % b < a;
}

bool NoCoin::flip(const Rational& p) {
  throw std::logic_error("deterministic path drew a coin with p = " + to_string(p));
}

bool ScriptedCoin::flip(const Rational& p) {
  check_probability(p);
  const std::size_t i = trail_.size();
  const bool outcome = i < script_.size() ? script_[i] : false;
  trail_.push_back({outcome, p});
  return outcome;
}

Count prrd(const Rational& x, CoinSource& coin) {
  if (x < 0) {
    throw std::domain_error("prrd of negative value " + to_string(x));
  }
  const Count lo = floor_int(x);
  const Rational frac = x - lo;
  if (frac == 0) return lo;
  return coin.flip(frac) ? lo + 1 : lo;
}

}  // namespace carshare
