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

#include <doctest.h>

#include <cmath>
#include <random>

#include "carshare/coin.hpp"
#include "carshare/errors.hpp"
#include "carshare/policies.hpp"
#include "carshare/runner.hpp"
#include "helpers.hpp"

using namespace carshare;

namespace {

std::vector<bool> accepts(ArgbaPolicy& p, const RequestSeq& s, CoinSource& coin) {
  std::vector<bool> out;
  for (Direction r : s) out.push_back(p.step(r, coin));
  return out;
}

Allocation random_alloc(Count k, std::mt19937_64& rng) {
  const Count gl = static_cast<Count>(rng() % (k + 1));
  const Count gr = static_cast<Count>(rng() % (k + 1 - gl));
  return {gr, k - gl - gr, gl};
}

}  // namespace

TEST_CASE("prrd rounds up with probability equal to the fraction") {
  NoCoin none;
  CHECK(prrd(Rational(3), none) == 3);
  CHECK(prrd(Rational(0), none) == 0);
  CHECK_THROWS_AS(prrd(Rational(-1, 2), none), std::domain_error);

  ScriptedCoin up({true});
  CHECK(prrd(q("3.3"), up) == 4);
  REQUIRE(up.trail().size() == 1);
  CHECK(up.trail()[0].p == Rational(3, 10));
  ScriptedCoin down({false});
  CHECK(prrd(q("3.3"), down) == 3);
}

TEST_CASE("prrd empirical mean is within 3 standard errors") {
  for (const char* text : {"0.1", "1.5", "7/3"}) {
    const Rational x = q(text);
    SeededCoin coin(12345);
    constexpr int n = 100000;
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(prrd(x, coin));
    const double mean = sum / n;
    const double frac = to_double(x - floor_int(x));
    const double se = std::sqrt(frac * (1 - frac) / n);
    CHECK(std::abs(mean - to_double(x)) <= 3 * se);
  }
}

TEST_CASE("seeded coins are reproducible") {
  SeededCoin a(99), b(99);
  for (int i = 0; i < 1000; ++i) CHECK(a.flip(Rational(1, 3)) == b.flip(Rational(1, 3)));
}

TEST_CASE("gba follows the greedy and balanced branches") {
  const Allocation start = Allocation::initial(100);
  CHECK(gba_decide(start, {60, 20}, 100) == StageDecision{60, 20});
  CHECK(gba_decide(start, {100, 30}, 100) == StageDecision{70, 30});
  CHECK(gba_decide(start, {100, 100}, 100) == StageDecision{50, 50});
  CHECK(gba_decide(Allocation::initial(5), {5, 5}, 5) == StageDecision{3, 2});
  // Both greedy tests hold: the (0,1) branch goes first.
  CHECK(gba_decide(Allocation::initial(4), {1, 1}, 4) == StageDecision{1, 1});
  // Little capacity at 0 triggers the first branch.
  CHECK(gba_decide({1, 0, 3}, {4, 4}, 4) == StageDecision{1, 3});
}

TEST_CASE("prgba randomizes only the balanced split") {
  NoCoin none;
  CHECK(prgba_decide(Allocation::initial(4), {4, 4}, 4, none) == StageDecision{2, 2});
  CHECK(prgba_decide(Allocation::initial(100), {60, 20}, 100, none) == StageDecision{60, 20});
  ScriptedCoin up({true});
  CHECK(prgba_decide(Allocation::initial(5), {5, 5}, 5, up) == StageDecision{2, 3});
  ScriptedCoin down({false});
  CHECK(prgba_decide(Allocation::initial(5), {5, 5}, 5, down) == StageDecision{3, 2});

  Policy p = Policy::make(PolicyId::Prgba);
  const auto e = expected_decision(p, Allocation::initial(5), {{5, 5}, std::nullopt});
  CHECK(e.gl == Rational(5, 2));
  CHECK(e.gr == Rational(5, 2));
}

TEST_CASE("alpha_beta targets") {
  const AlphaBeta a = alpha_beta(50, 100, 100);
  CHECK(a.load == Rational(3, 2));
  CHECK(a.alpha == Rational(200, 7));
  CHECK(a.beta == Rational(500, 7));
  CHECK(a.alpha + a.beta == 100);
  for (Count k : {2, 7, 20}) {
    const AlphaBeta full = alpha_beta(k, k, k);
    CHECK(full.alpha == Rational(k, 2));
    CHECK(full.beta == Rational(k, 2));
  }
  const AlphaBeta none = alpha_beta(0, 0, 10);
  CHECK(none.alpha == 0);
  CHECK(none.beta == 0);
  // k + beta = delta_i (k + ir) with delta_i = 3 / (2 + 3/2) = 6/7.
  CHECK(100 + a.beta == Rational(1200, 7));
  CHECK(100 + a.beta == Rational(6, 7) * (100 + 100));
  CHECK_THROWS(alpha_beta(11, 0, 10));
}

TEST_CASE("agba decisions") {
  ScriptedCoin down({false});
  CHECK(agba_decide(Allocation::initial(100), {50, 100}, 100, down) == StageDecision{28, 72});
  ScriptedCoin up({true});
  CHECK(agba_decide(Allocation::initial(100), {50, 100}, 100, up) == StageDecision{29, 71});
  NoCoin none;
  CHECK(agba_decide(Allocation::initial(4), {2, 1}, 4, none) == StageDecision{2, 1});
  CHECK(agba_decide({0, 0, 4}, {4, 4}, 4, none) == StageDecision{0, 4});
  // Demand above k is capped before the targets are computed.
  CHECK(agba_decide(Allocation::initial(4), {9, 9}, 4, none) == StageDecision{2, 2});

  Policy p = Policy::make(PolicyId::Agba);
  const auto e = expected_decision(p, Allocation::initial(100), {{50, 100}, std::nullopt});
  CHECK(e.gl == Rational(200, 7));
  CHECK(e.gr == Rational(500, 7));
}

TEST_CASE("argba accepts on the before-count") {
  NoCoin none;
  ArgbaPolicy p;
  p.begin_stage(Allocation::initial(3), 3);
  CHECK(accepts(p, seq("LLLLL"), none) == std::vector<bool>{true, true, false, false, false});
  CHECK(p.end_stage() == StageDecision{2, 0});

  p.begin_stage(Allocation::initial(4), 4);
  CHECK(accepts(p, seq("LLLLRRRR"), none) ==
        std::vector<bool>{true, true, true, false, true, false, false, false});
  CHECK(p.end_stage() == StageDecision{3, 1});

  p.begin_stage({0, 0, 3}, 3);
  CHECK_FALSE(p.step(Direction::L, none));
  CHECK(p.seen_l() == 1);
  p.end_stage();

  ArgbaPolicy fresh;
  CHECK_THROWS_AS(fresh.step(Direction::L, none), UsageError);
}

TEST_CASE("prargba flips one coin at the fractional boundary") {
  ArgbaPolicy p(true);
  ScriptedCoin up({true});
  p.begin_stage(Allocation::initial(2), 2);
  CHECK(accepts(p, seq("LLL"), up) == std::vector<bool>{true, true, false});
  REQUIRE(up.trail().size() == 1);
  CHECK(up.trail()[0].p == Rational(1, 3));
  p.end_stage();

  Policy pol = Policy::make(PolicyId::Prargba);
  const RequestSeq l3 = seq("LLL");
  CHECK(expected_decision(pol, Allocation::initial(2), {{3, 0}, std::span(l3)}).gl ==
        Rational(4, 3));
  const RequestSeq l4 = seq("LLLL");
  CHECK(expected_decision(pol, Allocation::initial(4), {{4, 0}, std::span(l4)}).gl ==
        Rational(8, 3));

  // 2k/3 integral: identical to argba and no coin.
  ArgbaPolicy q3(true);
  NoCoin none;
  q3.begin_stage(Allocation::initial(3), 3);
  CHECK(accepts(q3, seq("LLLRRR"), none) ==
        std::vector<bool>{true, true, false, true, false, false});
}

TEST_CASE("deterministic expected_decision equals the decision") {
  Policy p = Policy::make(PolicyId::Gba);
  NoCoin none;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Count k = 2 + static_cast<Count>(rng() % 9);
    const Allocation a = random_alloc(k, rng);
    const StageDemand d{static_cast<Count>(rng() % (2 * k + 1)),
                        static_cast<Count>(rng() % (2 * k + 1))};
    const StageDecision g = gba_decide(a, d, k);
    CHECK(expected_decision(p, a, {d, std::nullopt}) ==
          ExpectedDecision{Rational(g.gl), Rational(g.gr)});
  }
}

TEST_CASE("every policy decision is feasible") {
  std::mt19937_64 rng(11);
  for (PolicyId id : kAllPolicies) {
    Policy p = Policy::make(id);
    SeededCoin coin(5);
    for (int t = 0; t < 2000; ++t) {
      const Count k = 2 + static_cast<Count>(rng() % 12);
      const Allocation a = random_alloc(k, rng);
      const StageDemand d{static_cast<Count>(rng() % (2 * k + 1)),
                          static_cast<Count>(rng() % (2 * k + 1))};
      RequestSeq s = l_then_r(d);
      std::shuffle(s.begin(), s.end(), rng);
      const StageDecision out = p.play(a, {d, std::span<const Direction>(s)}, coin);
      INFO(to_string(id), " k=", k, " alloc ", a, " demand ", d.il, ",", d.ir);
      CHECK(is_feasible(a, d, out));
    }
  }
}

TEST_CASE("gba decisions fall in the proof's cases") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5000; ++t) {
    const Count k = 2 + static_cast<Count>(rng() % 15);
    const Count h = k / 2;
    const Allocation a = random_alloc(k, rng);
    const StageDemand d{static_cast<Count>(rng() % (2 * k + 1)),
                        static_cast<Count>(rng() % (2 * k + 1))};
    const StageDecision g = gba_decide(a, d, k);
    const bool l = g.gl == d.il || g.gl == a.capacity_l() || (g.gl == k - g.gr && g.gl >= h);
    const bool r = g.gr == d.ir || g.gr == a.capacity_r() || (g.gr == k - g.gl && g.gr >= h);
    INFO("k=", k, " alloc ", a, " decision ", g);
    CHECK(l);
    CHECK(r);
  }
}

TEST_CASE("argba tallies fall in the proof's cases; rejection is monotone") {
  std::mt19937_64 rng(17);
  for (bool randomized : {false, true}) {
    SeededCoin coin(23);
    for (int t = 0; t < 5000; ++t) {
      const Count k = 2 + static_cast<Count>(rng() % 15);
      const Allocation a = random_alloc(k, rng);
      const StageDemand d{static_cast<Count>(rng() % (2 * k + 1)),
                          static_cast<Count>(rng() % (2 * k + 1))};
      RequestSeq s = l_then_r(d);
      std::shuffle(s.begin(), s.end(), rng);
      ArgbaPolicy p(randomized);
      p.begin_stage(a, k);
      bool rejected_l = false, rejected_r = false, monotone = true;
      for (Direction r : s) {
        const bool ok = p.step(r, coin);
        bool& rejected = r == Direction::L ? rejected_l : rejected_r;
        if (ok && rejected) monotone = false;
        if (!ok) rejected = true;
      }
      const StageDecision g = p.end_stage();
      CHECK(monotone);
      CHECK(is_feasible(a, d, g));
      if (randomized) continue;
      const Count top = ceil_int(Rational(2 * k, 3));
      const bool full = g.gl + g.gr == k && g.gl >= k / 3 && g.gr >= k / 3;
      INFO("k=", k, " alloc ", a, " tally ", g);
      CHECK((g.gl == d.il || g.gl == a.capacity_l() || g.gl == top || full));
      CHECK((g.gr == d.ir || g.gr == a.capacity_r() || g.gr == top || full));
    }
  }
}

TEST_CASE("policy ids round-trip") {
  for (PolicyId id : kAllPolicies) CHECK(parse_policy_id(to_string(id)) == id);
  CHECK_THROWS_AS(parse_policy_id("GBA"), std::invalid_argument);
  CHECK(granularity(PolicyId::Argba) == Granularity::Request);
  CHECK(granularity(PolicyId::Agba) == Granularity::Stage);
  CHECK(is_randomized(PolicyId::Agba));
  CHECK_FALSE(is_randomized(PolicyId::Argba));
}
