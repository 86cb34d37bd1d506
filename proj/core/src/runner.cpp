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

#include "carshare/runner.hpp"

#include <map>
#include <stdexcept>

#include "carshare/errors.hpp"

namespace carshare {

namespace {

void check_decision(const Policy& policy, const Allocation& alloc, const StageDemand& demand,
                    const StageDecision& d, std::size_t stage) {
  if (auto b = violated_bound(alloc, demand, d)) {
    throw std::logic_error(std::string(to_string(policy.id())) + " produced an infeasible decision (" +
                           std::to_string(d.gl) + "," + std::to_string(d.gr) + ") in stage " +
                           std::to_string(stage + 1) + ": " + std::string(bound_name(*b)));
  }
}

}  // namespace

std::vector<StageDecision> run_policy(Policy& policy, const Instance& inst, CoinSource& coin) {
  std::vector<StageDecision> out;
  out.reserve(inst.num_stages());
  Allocation alloc = Allocation::initial(inst.k());
  for (std::size_t i = 0; i < inst.num_stages(); ++i) {
    const StageDecision d = policy.play(alloc, stage_input(inst, i), coin);
    check_decision(policy, alloc, inst.demand(i), d, i);
    out.push_back(d);
    alloc = transition(alloc, d);
  }
  return out;
}

std::vector<WeightedDecision> decision_distribution(Policy& policy, const Allocation& alloc,
                                                    const StageInput& input) {
  std::map<StageDecision, WeightedDecision> merged;
  // Depth-first over coin paths: each run replays a prefix and answers
  // `false` past it; every fresh `false` spawns a sibling prefix ending in
  // `true`.
  std::vector<std::vector<bool>> pending{{}};
  while (!pending.empty()) {
    std::vector<bool> prefix = std::move(pending.back());
    pending.pop_back();
    ScriptedCoin coin(prefix);
    const StageDecision d = policy.play(alloc, input, coin);
    Rational prob = 1;
    const auto& trail = coin.trail();
    for (std::size_t j = 0; j < trail.size(); ++j) {
      prob *= trail[j].outcome ? trail[j].p : Rational(1 - trail[j].p);
      if (j >= prefix.size()) {
        std::vector<bool> sibling;
        sibling.reserve(j + 1);
        for (std::size_t t = 0; t < j; ++t) sibling.push_back(trail[t].outcome);
        sibling.push_back(true);
        pending.push_back(std::move(sibling));
      }
    }
    auto [it, inserted] = merged.try_emplace(d, WeightedDecision{prob, d, trail.size()});
    if (!inserted) {
      it->second.prob += prob;
      it->second.coins = std::max(it->second.coins, trail.size());
    }
  }
  std::vector<WeightedDecision> out;
  out.reserve(merged.size());
  for (auto& [d, w] : merged) out.push_back(std::move(w));
  return out;
}

ExpectedDecision expected_decision(Policy& policy, const Allocation& alloc,
                                   const StageInput& input) {
  ExpectedDecision e;
  for (const auto& w : decision_distribution(policy, alloc, input)) {
    e.gl += w.prob * w.decision.gl;
    e.gr += w.prob * w.decision.gr;
  }
  return e;
}

ExpectedRun expected_run(Policy& policy, const Instance& inst, std::size_t coin_budget) {
  struct State {
    Rational prob;
    std::size_t coins = 0;
  };
  std::map<Allocation, State> states{{Allocation::initial(inst.k()), State{1, 0}}};
  ExpectedRun run;
  for (std::size_t i = 0; i < inst.num_stages(); ++i) {
    const StageInput input = stage_input(inst, i);
    ExpectedDecision stage;
    std::map<Allocation, State> next;
    for (const auto& [alloc, state] : states) {
      for (const auto& w : decision_distribution(policy, alloc, input)) {
        check_decision(policy, alloc, inst.demand(i), w.decision, i);
        const Rational p = state.prob * w.prob;
        stage.gl += p * w.decision.gl;
        stage.gr += p * w.decision.gr;
        const std::size_t coins = state.coins + w.coins;
        if (coins > coin_budget) {
          throw BudgetExceeded("exact expectation needs " + std::to_string(coins) +
                                   " coins on one path, budget is " + std::to_string(coin_budget),
                               coins, coin_budget);
        }
        run.max_coins = std::max(run.max_coins, coins);
        auto [it, inserted] = next.try_emplace(transition(alloc, w.decision), State{p, coins});
        if (!inserted) {
          it->second.prob += p;
          it->second.coins = std::max(it->second.coins, coins);
        }
      }
    }
    run.profit += stage.gl + stage.gr;
    run.stages.push_back(std::move(stage));
    states = std::move(next);
  }
  return run;
}

}  // namespace carshare
