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

#include <cstddef>
#include <vector>

#include "carshare/coin.hpp"
#include "carshare/model.hpp"
#include "carshare/policies.hpp"
#include "carshare/rational.hpp"

namespace carshare {

/// Plays every stage in order from [0, k, 0] with one realization of the
/// coins. Throws std::logic_error if the policy ever returns an infeasible
/// decision.
std::vector<StageDecision> run_policy(Policy& policy, const Instance& inst, CoinSource& coin);

struct WeightedDecision {
  Rational prob;
  StageDecision decision;
  /// Coins flipped on the path that produced this decision (max if merged).
  std::size_t coins = 0;
};

/// Exact outcome distribution of one stage, enumerating every coin path.
/// Outcomes with equal decisions are merged; sorted by decision.
std::vector<WeightedDecision> decision_distribution(Policy& policy, const Allocation& alloc,
                                                    const StageInput& input);

struct ExpectedDecision {
  Rational gl;
  Rational gr;

  bool operator==(const ExpectedDecision&) const = default;
};

ExpectedDecision expected_decision(Policy& policy, const Allocation& alloc,
                                   const StageInput& input);

struct ExpectedRun {
  std::vector<ExpectedDecision> stages;
  Rational profit;
  /// Most coins flipped along any single outcome path of the whole run.
  std::size_t max_coins = 0;
};

/// Exact expectation over all coin outcomes of a full run. The distribution is
/// carried per stage as probabilities over allocations, so equal allocations
/// reached by different coin paths share work. Throws BudgetExceeded once some
/// outcome path needs more than `coin_budget` coins.
ExpectedRun expected_run(Policy& policy, const Instance& inst, std::size_t coin_budget = 30);

}  // namespace carshare
