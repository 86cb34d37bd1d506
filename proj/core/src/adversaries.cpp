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

#include "carshare/adversaries.hpp"

#include "carshare/errors.hpp"
#include "carshare/oracle.hpp"

namespace carshare {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractError(what);
}

void require_k(Count k) { require(k >= 2, "adversary needs k >= 2"); }

std::string name(const Policy& p) { return std::string(to_string(p.id())); }

ExpectedDecision exact(const StageDecision& d) { return {Rational(d.gl), Rational(d.gr)}; }

AdversaryOutcome score(Policy& policy, Instance inst, std::string branch) {
  AdversaryOutcome out;
  const ExpectedRun run = expected_run(policy, inst);
  out.alg = run.profit;
  out.decisions = run.stages;
  out.opt = opt_dp(inst).profit;
  out.ratio = Ratio::of(Rational(out.opt), out.alg);
  out.instance = std::move(inst);
  out.branch = std::move(branch);
  return out;
}

RequestSeq repeat(Direction r, Count n) { return RequestSeq(static_cast<std::size_t>(n), r); }

}  // namespace

AdversaryOutcome adversary_thm6(Policy& policy, Count k) {
  require_k(k);
  require(policy.granularity() == Granularity::Stage && !policy.randomized(),
          "theorem 6 adversary needs a deterministic stage policy, got " + name(policy) +
              " (use theorem 9 with R = 2 for randomized stage policies)");
  const StagePolicy& sp = *policy.stage_policy();
  NoCoin coin;

  const StageDemand first{k, k};
  const Allocation start = Allocation::initial(k);
  const StageDecision d1 = sp.decide(start, first, coin);
  // Favouring (1,0)'s (or a tie) is punished with (1,0)'s, since those
  // servers now sit at location 0.
  const bool flood_r = d1.gl <= k / 2;
  const StageDemand second = flood_r ? StageDemand{0, k} : StageDemand{k, 0};
  const StageDecision d2 = sp.decide(transition(start, d1), second, coin);

  AdversaryOutcome out;
  out.instance = Instance::stage_model(k, {first, second});
  out.alg = d1.served() + d2.served();
  out.opt = opt_dp(out.instance).profit;
  out.ratio = Ratio::of(Rational(out.opt), out.alg);
  out.decisions = {exact(d1), exact(d2)};
  out.branch = flood_r ? "flood-R" : "flood-L";
  return out;
}

AdversaryOutcome adversary_thm7(Policy& policy, Count k) {
  require_k(k);
  require(policy.granularity() == Granularity::Request && !policy.randomized(),
          "theorem 7 adversary needs a deterministic request policy, got " + name(policy) +
              " (use theorem 8 for randomized request policies)");
  RequestPolicy& rp = *policy.request_policy();
  NoCoin coin;

  const Allocation start = Allocation::initial(k);
  rp.begin_stage(start, k);
  Count accepted = 0;
  for (Count j = 0; j < k; ++j) {
    if (rp.step(Direction::L, coin)) ++accepted;
  }

  AdversaryOutcome out;
  const RequestSeq ls = repeat(Direction::L, k);
  if (accepted <= (2 * k) / 3) {
    const StageDecision d1 = rp.end_stage();
    out.instance = Instance::request_model(k, {ls});
    out.alg = d1.served();
    out.decisions = {exact(d1)};
    out.branch = "stop";
  } else {
    for (Count j = 0; j < k; ++j) rp.step(Direction::R, coin);
    const StageDecision d1 = rp.end_stage();
    rp.begin_stage(transition(start, d1), k);
    for (Count j = 0; j < k; ++j) rp.step(Direction::L, coin);
    const StageDecision d2 = rp.end_stage();
    RequestSeq first = ls;
    first.insert(first.end(), static_cast<std::size_t>(k), Direction::R);
    out.instance = Instance::request_model(k, {std::move(first), ls});
    out.alg = d1.served() + d2.served();
    out.decisions = {exact(d1), exact(d2)};
    out.branch = "continue";
  }
  out.opt = opt_dp(out.instance).profit;
  out.ratio = Ratio::of(Rational(out.opt), out.alg);
  return out;
}

AdversaryOutcome adversary_thm8(Policy& policy, Count k) {
  require_k(k);
  require(policy.granularity() == Granularity::Request,
          "theorem 8 adversary needs a request policy, got " + name(policy));
  const RequestSeq ls = repeat(Direction::L, k);
  const ExpectedDecision seen =
      expected_decision(policy, Allocation::initial(k), StageInput{{k, 0}, std::span(ls)});

  RequestSeq first = ls;
  first.insert(first.end(), static_cast<std::size_t>(k), Direction::R);
  AdversaryOutcome stop = score(policy, Instance::request_model(k, {ls}), "stop");
  AdversaryOutcome cont = score(policy, Instance::request_model(k, {first, ls}), "continue");

  if (stop.ratio != cont.ratio) {
    return stop.ratio > cont.ratio ? stop : cont;
  }
  return seen.gl <= Rational((2 * k) / 3) ? stop : cont;
}

AdversaryOutcome adversary_thm9(Policy& policy, Count k, const Rational& load_bound) {
  require_k(k);
  require(policy.granularity() == Granularity::Stage,
          "theorem 9 adversary needs a stage policy, got " + name(policy));
  require(load_bound >= 1 && load_bound <= 2, "R must satisfy 1 <= R <= 2, got " +
                                                  to_string(load_bound));
  const Rational total = load_bound * k;
  require(is_integral(total), "R*k must be an integer, got " + to_string(total));

  const Count rk = floor_int(total);
  const StageDemand first{rk / 2, rk - rk / 2};
  const Rational alpha = ((1 - load_bound) * k + 3 * first.il) / (2 + load_bound);
  const ExpectedDecision seen =
      expected_decision(policy, Allocation::initial(k), StageInput{first, std::nullopt});
  const bool flood_r = seen.gl <= alpha;
  const StageDemand second = flood_r ? StageDemand{0, k} : StageDemand{k, 0};
  return score(policy, Instance::stage_model(k, {first, second}),
               flood_r ? "flood-R" : "flood-L");
}

ExhaustiveResult exhaustive_worst(Policy& policy, Count k, std::size_t stages, Count cap,
                                  std::uint64_t budget) {
  require_k(k);
  require(stages >= 1, "exhaustive search needs at least one stage");
  require(cap >= 0, "demand cap must be non-negative");
  const bool ordered = policy.granularity() == Granularity::Request;
  const std::uint64_t orderings = ordered ? 2 : 1;
  const std::uint64_t total = saturating_mul(
      saturating_pow(static_cast<std::uint64_t>(cap + 1), 2 * stages), orderings);
  if (total > budget) {
    throw BudgetExceeded("exhaustive search over " + std::to_string(total) +
                             " instances exceeds budget " + std::to_string(budget),
                         total, budget);
  }

  ExhaustiveResult result;
  bool have_best = false;
  std::vector<StageDemand> demands(stages, StageDemand{0, 0});
  for (;;) {
    for (std::uint64_t ord = 0; ord < orderings; ++ord) {
      Instance inst = Instance::stage_model(k, demands);
      if (ordered) {
        std::vector<RequestSeq> streams;
        for (const auto& d : demands) streams.push_back(ord == 0 ? l_then_r(d) : r_then_l(d));
        inst = Instance::request_model(k, std::move(streams));
      }
      AdversaryOutcome cand;
      if (policy.randomized()) {
        cand = score(policy, std::move(inst), "exhaustive");
      } else {
        NoCoin coin;
        const auto decisions = run_policy(policy, inst, coin);
        Count alg = 0;
        for (const auto& d : decisions) {
          alg += d.served();
          cand.decisions.push_back(exact(d));
        }
        cand.alg = alg;
        cand.opt = opt_dp(inst).profit;
        cand.ratio = Ratio::of(Rational(cand.opt), cand.alg);
        cand.instance = std::move(inst);
        cand.branch = "exhaustive";
      }
      ++result.instances;
      if (!have_best || cand.ratio > result.worst.ratio) {
        result.worst = std::move(cand);
        have_best = true;
      }
    }
    // Odometer over (il_1, ir_1, ..., il_n, ir_n), last digit fastest.
    std::size_t digit = 2 * stages;
    while (digit > 0) {
      --digit;
      Count& c = (digit % 2 == 0) ? demands[digit / 2].il : demands[digit / 2].ir;
      if (c < cap) {
        ++c;
        break;
      }
      c = 0;
      if (digit == 0) return result;
    }
  }
}

}  // namespace carshare
