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

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "carshare/errors.hpp"
#include "carshare/harness.hpp"
#include "carshare/instance_io.hpp"
#include "helpers.hpp"

using namespace carshare;

TEST_CASE("bound registry") {
  CHECK(delta_for(PolicyId::Gba, 4, 2) == Rational(3, 4));
  CHECK(delta_for(PolicyId::Gba, 5, 2) == Rational(7, 10));
  CHECK(delta_for(PolicyId::Argba, 4, 2) == Rational(5, 8));
  CHECK(delta_for(PolicyId::Prgba, 7, 2) == Rational(3, 4));
  CHECK(delta_for(PolicyId::Prargba, 7, 2) == Rational(2, 3));
  CHECK(delta_for(PolicyId::Agba, 20, q("1.1")) == Rational(30, 31));
  CHECK(delta_for(PolicyId::Agba, 20, Rational(1, 2)) == 1);
  CHECK(delta_for(PolicyId::Agba, 20, Rational(3)) == Rational(3, 4));
  CHECK(ratio_bound(PolicyId::Gba, 5) == Rational(10, 7));
}

TEST_CASE("evaluate a deterministic policy") {
  const EvalReport r = evaluate(PolicyId::Gba, Instance::stage_model(4, {{4, 4}, {0, 4}}), 7);
  CHECK(r.alg == 6);
  CHECK(r.opt == 8);
  CHECK(r.ratio.str() == "4/3");
  CHECK(r.load == 2);
  CHECK_FALSE(r.seed.has_value());
  CHECK(r.trace.delta == Rational(3, 4));
}

TEST_CASE("empty demand has ratio 1") {
  for (PolicyId id : kAllPolicies) {
    const EvalReport r = evaluate(id, Instance::stage_model(3, {{0, 0}, {0, 0}}), 1);
    CHECK(r.alg == 0);
    CHECK(r.opt == 0);
    CHECK(r.ratio.str() == "1/1");
  }
}

TEST_CASE("ratio sentinel for zero profit against positive opt") {
  CHECK(Ratio::of(Rational(3), Rational(0)).infinite());
  CHECK(Ratio::of(Rational(3), Rational(0)).str() == "inf");
  CHECK(Ratio::of(Rational(3), Rational(0)) > Ratio(Rational(1000)));
}

TEST_CASE("randomized policies need a seed") {
  const Instance inst = Instance::stage_model(5, {{5, 5}, {0, 5}});
  CHECK_THROWS_AS(evaluate(PolicyId::Prgba, inst, std::nullopt), ContractError);
  const EvalReport r = evaluate(PolicyId::Prgba, inst, 42);
  CHECK(r.seed == 42u);
  CHECK((r.alg == 7 || r.alg == 8));
}

TEST_CASE("model mismatches are noted") {
  const EvalReport a = evaluate(PolicyId::Argba, Instance::stage_model(4, {{4, 4}}), 0);
  REQUIRE(a.notes.size() == 1);
  CHECK(a.notes[0].find("L-then-R") != std::string::npos);
  const EvalReport b = evaluate(PolicyId::Gba, Instance::request_model(4, {seq("LR")}), 0);
  REQUIRE(b.notes.size() == 1);
  CHECK(b.notes[0].find("counts") != std::string::npos);
}

TEST_CASE("exact expectations") {
  const EvalReport p = exact_expectation(PolicyId::Prgba, Instance::stage_model(5, {{5, 5}, {0, 5}}));
  CHECK(p.alg == Rational(15, 2));
  CHECK(p.opt == 10);
  CHECK(p.ratio.str() == "4/3");

  const EvalReport a =
      exact_expectation(PolicyId::Agba, Instance::stage_model(100, {{50, 100}, {100, 0}}));
  CHECK(a.alg == Rational(1200, 7));
  CHECK(a.opt == 200);
  CHECK(a.ratio.str() == "7/6");

  const Instance inst = Instance::stage_model(5, {{5, 5}, {5, 0}});
  const EvalReport d = exact_expectation(PolicyId::Gba, inst);
  const EvalReport e = evaluate(PolicyId::Gba, inst, std::nullopt);
  CHECK(d.alg == e.alg);
  CHECK(d.decisions == e.decisions);
  CHECK(report_json(d) == report_json(e));
}

TEST_CASE("monte carlo") {
  const Instance inst = Instance::stage_model(5, {{5, 5}, {0, 5}});
  const MonteCarloResult mc = monte_carlo(PolicyId::Prgba, inst, 100000, 42);
  CHECK(std::abs(mc.mean - 7.5) <= 3 * mc.std_error);
  CHECK(mc.ci99_low < mc.mean);
  CHECK(mc.mean < mc.ci99_high);

  const MonteCarloResult again = monte_carlo(PolicyId::Prgba, inst, 100000, 42);
  CHECK(monte_carlo_json(PolicyId::Prgba, inst, mc, std::nullopt) ==
        monte_carlo_json(PolicyId::Prgba, inst, again, std::nullopt));

  const MonteCarloResult det = monte_carlo(PolicyId::Gba, inst, 1000, 1);
  CHECK(det.stddev == 0);
  CHECK(det.mean == 8.0);
  CHECK_THROWS_AS(monte_carlo(PolicyId::Gba, inst, 0, 1), ContractError);
}

TEST_CASE("trace identities") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    const Count k = 2 + static_cast<Count>(uniform_below(rng, 8));
    const Instance inst = random_instance(k, 1 + uniform_below(rng, 5), 2 * k, rng);
    for (PolicyId id : kAllPolicies) {
      const EvalReport r = exact_expectation(id, inst);
      const InductionTrace& tr = r.trace;
      for (std::size_t i = 0; i < tr.A.size(); ++i) {
        const Rational a_prev = i == 0 ? Rational(0) : tr.A[i - 1];
        const Rational b_prev = i == 0 ? Rational(0) : tr.B[i - 1];
        CHECK(tr.A[i] >= a_prev);
        CHECK(tr.B[i] >= b_prev);
        CHECK(tr.X[i] == a_prev + k + r.decisions[i].gr);
        CHECK(tr.U[i] == a_prev + k + r.decisions[i].gl);
        const auto& o = r.offline.schedule.decisions()[i];
        CHECK(tr.Y[i] == b_prev + k + o.gr);
        CHECK(tr.V[i] == b_prev + k + o.gl);
      }
      CHECK(r.load <= 2);
    }
  }
}

TEST_CASE("induction check against one offline schedule") {
  const Instance inst = Instance::stage_model(4, {{4, 4}, {0, 4}});
  const EvalReport r = evaluate(PolicyId::Gba, inst, std::nullopt);
  CHECK(induction_check(r, r.offline.schedule, delta_for(PolicyId::Gba, 4)).ok());

  // At delta = 1 the OPT witness (4,0),(0,4) already breaks (iii) in stage 1:
  // U = 4 + 2 + 0 = 6 against V = 4 + 4 + 0 = 8. (i) first breaks in stage 2.
  const auto bad = induction_check(r, r.offline.schedule, Rational(1));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violation->stage == 1);
  CHECK(bad.violation->inequality == "iii");
  CHECK(bad.violation->alg_side == 6);
  CHECK(bad.violation->bound == 8);
  CHECK(r.trace.A[0] >= r.trace.B[0]);
  CHECK(r.trace.A[1] < r.trace.B[1]);

  CHECK_THROWS_AS(induction_check(r, Schedule(4, {{4, 0}, {4, 0}}), Rational(1)), ContractError);
}

TEST_CASE("induction check against every offline schedule") {
  const Instance inst = Instance::stage_model(4, {{4, 4}, {0, 4}});
  const EvalReport r = evaluate(PolicyId::Gba, inst, std::nullopt);
  CHECK(induction_check_all(r, delta_for(PolicyId::Gba, 4), 1'000'000).ok());
  const auto bad = induction_check_all(r, Rational(1), 1'000'000);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violation->stage == 1);
  CHECK_THROWS_AS(induction_check_all(r, Rational(1), 10), BudgetExceeded);

  // Brute force agrees with the pruned search on a small grid.
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const Count k = 2 + static_cast<Count>(uniform_below(rng, 2));
    const Instance small = random_instance(k, 1 + uniform_below(rng, 3), 2 * k, rng);
    const EvalReport e = exact_expectation(PolicyId::Gba, small);
    for (const Rational& delta : {delta_for(PolicyId::Gba, k), Rational(1), Rational(9, 10)}) {
      bool any = false;
      enumerate_schedules(small, 1'000'000, [&](const Schedule& s) {
        if (!induction_check(e, s, delta).ok()) any = true;
      });
      CHECK(any == !induction_check_all(e, delta, 1'000'000).ok());
    }
  }
}

TEST_CASE("policies stay within their bounds on fuzzed instances") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 300; ++t) {
    const Count k = 2 + static_cast<Count>(uniform_below(rng, 9));
    const std::size_t n = 1 + uniform_below(rng, 5);
    const Instance s = random_instance(k, n, 2 * k, rng);
    const Instance f = random_request_instance(k, n, 2 * k, rng);
    for (PolicyId id : kAllPolicies) {
      const Instance& inst = granularity(id) == Granularity::Request ? f : s;
      const EvalReport r = exact_expectation(id, inst);
      CHECK(r.ratio <= Ratio(ratio_bound(id, k, r.load)));
    }
  }
}

TEST_CASE("sweeps") {
  const std::vector<Count> ks{2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto rows = sweep(PolicyId::Gba, ks, Family::Thm6);
  REQUIRE(rows.size() == ks.size());
  for (const auto& row : rows) CHECK(row.ratio == Ratio(Rational(2 * row.k, row.k + row.k / 2)));
  CHECK(rows[4].ratio.str() == "4/3");
  CHECK(rows[5].ratio.str() == "7/5");

  const std::vector<Count> k20{20};
  const std::vector<Rational> loads{Rational(2), Rational(1), Rational(3, 2)};
  const auto agba = sweep(PolicyId::Agba, k20, Family::Thm9, loads);
  REQUIRE(agba.size() == 3);
  CHECK(agba[0].ratio.str() == "1/1");
  CHECK(agba[1].ratio.str() == "7/6");
  CHECK(agba[2].ratio.str() == "4/3");

  const std::vector<Count> k3{3};
  CHECK(sweep(PolicyId::Argba, k3, Family::Thm7)[0].ratio.str() == "3/2");

  const std::vector<Rational> odd{q("1.1")};
  CHECK(sweep(PolicyId::Agba, k3, Family::Thm9, odd).empty());

  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("policy,k,R,digest,alg,opt,ratio,ratio_decimal\n", 0) == 0);
  CHECK(csv.find("gba,6,,") != std::string::npos);
}

TEST_CASE("report emission") {
  const EvalReport r = evaluate(PolicyId::Gba, Instance::stage_model(4, {{4, 4}, {0, 4}}), {});
  const std::string json = report_json(r);
  for (const char* key : {"\"policy\": \"gba\"", "\"k\": 4", "\"model\": \"S\"", "\"seed\": null",
                          "\"alg\": \"6/1\"", "\"opt\": 8", "\"ratio\": \"4/3\"", "\"R\": \"2/1\"",
                          "\"trace\"", "\"stages\""}) {
    CHECK(json.find(key) != std::string::npos);
  }
  const std::string header = report_csv_header();
  const std::string row = report_csv_row(r);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
  CHECK(row.find("4:4:2/1:2/1;0:4:0/1:2/1") != std::string::npos);

  const EvalReport e =
      exact_expectation(PolicyId::Prgba, Instance::stage_model(5, {{5, 5}, {0, 5}}));
  CHECK(report_json(e).find("\"gl\": \"5/2\"") != std::string::npos);
}

TEST_CASE("fuzzer is reproducible") {
  std::mt19937_64 a(5), b(5);
  for (int t = 0; t < 50; ++t) {
    CHECK(random_instance(4, 3, 8, a) == random_instance(4, 3, 8, b));
    CHECK(random_request_instance(4, 3, 8, a) == random_request_instance(4, 3, 8, b));
  }
  std::mt19937_64 c(9);
  for (int t = 0; t < 1000; ++t) CHECK(uniform_below(c, 7) < 7);
}

TEST_CASE("bundled fixtures reproduce their stated ratios") {
  const std::map<std::string, std::string> ratios{
      {"thm6_k4", "4/3"},          {"thm6_k5", "10/7"},
      {"thm7_k3", "3/2"},          {"thm7_k4", "8/5"},
      {"thm8_k4_stop", "3/2"},     {"thm8_k4_continue", "3/2"},
      {"thm9_prgba_k5", "4/3"},    {"thm9_agba_k20_r11_10", "31/30"},
      {"thm9_agba_k20_r3_2", "7/6"}, {"thm9_agba_k20_r2", "4/3"},
      {"agba_k100", "7/6"},        {"empty_k3", "1/1"}};
  const auto fixtures = bundled_fixtures();
  CHECK(fixtures.size() == ratios.size());
  for (const Fixture& fx : fixtures) {
    for (PolicyId id : fx.policies) {
      INFO(fx.name, " ", to_string(id));
      CHECK(exact_expectation(id, fx.instance).ratio.str() == ratios.at(fx.name));
    }
  }
}

TEST_CASE("fixture files match the bundled table") {
  for (const Fixture& fx : bundled_fixtures()) {
    const std::string path = std::string(CARSHARE_FIXTURE_DIR) + "/" + fx.name + ".json";
    INFO(path);
    CHECK(load_instance(path) == fx.instance);
  }
}
