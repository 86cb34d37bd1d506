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

#include "carshare/errors.hpp"
#include "carshare/runner.hpp"
#include "helpers.hpp"

using namespace carshare;

TEST_CASE("run_policy plays stage by stage from the initial allocation") {
  Policy p = Policy::make(PolicyId::Gba);
  NoCoin none;
  const auto ds = run_policy(p, Instance::stage_model(4, {{4, 4}, {0, 4}}), none);
  CHECK(ds == std::vector<StageDecision>{{2, 2}, {0, 2}});
}

TEST_CASE("request policies on count-only stages use L-then-R order") {
  Policy p = Policy::make(PolicyId::Argba);
  NoCoin none;
  const auto counts = run_policy(p, Instance::stage_model(4, {{4, 4}}), none);
  const auto ordered = run_policy(p, Instance::request_model(4, {seq("LLLLRRRR")}), none);
  CHECK(counts == ordered);
  const auto reversed = run_policy(p, Instance::request_model(4, {seq("RRRRLLLL")}), none);
  CHECK(reversed == std::vector<StageDecision>{{1, 3}});
}

TEST_CASE("decision_distribution enumerates coin outcomes") {
  Policy p = Policy::make(PolicyId::Prgba);
  const auto dist = decision_distribution(p, Allocation::initial(5), {{5, 5}, std::nullopt});
  REQUIRE(dist.size() == 2);
  CHECK(dist[0].decision == StageDecision{2, 3});
  CHECK(dist[1].decision == StageDecision{3, 2});
  CHECK(dist[0].prob == Rational(1, 2));
  CHECK(dist[1].prob == Rational(1, 2));

  const auto sure = decision_distribution(p, Allocation::initial(4), {{4, 4}, std::nullopt});
  REQUIRE(sure.size() == 1);
  CHECK(sure[0].prob == 1);
  CHECK(sure[0].coins == 0);
}

TEST_CASE("expected_run gives exact expectations") {
  Policy prgba = Policy::make(PolicyId::Prgba);
  const ExpectedRun a = expected_run(prgba, Instance::stage_model(5, {{5, 5}, {0, 5}}));
  CHECK(a.profit == Rational(15, 2));
  CHECK(a.max_coins == 1);

  Policy agba = Policy::make(PolicyId::Agba);
  const ExpectedRun b = expected_run(agba, Instance::stage_model(100, {{50, 100}, {100, 0}}));
  CHECK(b.profit == Rational(1200, 7));
  CHECK(b.stages[0].gl == Rational(200, 7));

  Policy gba = Policy::make(PolicyId::Gba);
  NoCoin none;
  const Instance inst = Instance::stage_model(5, {{5, 5}, {5, 0}});
  Count realized = 0;
  for (const auto& d : run_policy(gba, inst, none)) realized += d.served();
  CHECK(expected_run(gba, inst).profit == realized);
}

TEST_CASE("expected_run refuses paths longer than the coin budget") {
  Policy p = Policy::make(PolicyId::Prgba);
  const Instance inst = Instance::stage_model(5, {{5, 5}, {0, 5}});
  CHECK_THROWS_AS(expected_run(p, inst, 0), BudgetExceeded);
  CHECK_NOTHROW(expected_run(p, inst, 1));
}
