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
#include <random>
#include <vector>

#include "carshare/model.hpp"
#include "carshare/rational.hpp"

namespace carshare {

/// Source of biased coins. Policies draw exactly one coin per probabilistic
/// rounding of a non-integral value and none otherwise.
class CoinSource {
 public:
  virtual ~CoinSource() = default;
  /// True with probability p, where 0 < p < 1.
  virtual bool flip(const Rational& p) = 0;
};

/// Reproducible coins from a 64-bit seed. The coin is exact: p = a/b is
/// realized by a uniform draw from [0, b) compared against a.
class SeededCoin final : public CoinSource {
 public:
  explicit SeededCoin(std::uint64_t seed) : rng_(seed) {}
  bool flip(const Rational& p) override;

 private:
  std::mt19937_64 rng_;
};

/// Rejects every flip; wraps deterministic code paths.
class NoCoin final : public CoinSource {
 public:
  bool flip(const Rational& p) override;
};

/// Replays a fixed prefix of outcomes, then answers false, recording every
/// flip. Drives exhaustive enumeration of coin outcomes.
class ScriptedCoin final : public CoinSource {
 public:
  explicit ScriptedCoin(std::vector<bool> script) : script_(std::move(script)) {}
  bool flip(const Rational& p) override;

  struct Flip {
    bool outcome;
    Rational p;
  };
  const std::vector<Flip>& trail() const { return trail_; }

 private:
  std::vector<bool> script_;
  std::vector<Flip> trail_;
};

/// Probabilistic rounding: ceil(x) with probability x - floor(x), else
/// floor(x). Integral x consumes no coin. Throws std::domain_error for x < 0.
Count prrd(const Rational& x, CoinSource& coin);

}  // namespace carshare
