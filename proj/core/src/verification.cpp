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

#include "carshare/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "carshare/adversaries.hpp"
#include "carshare/harness.hpp"
#include "carshare/instance_io.hpp"
#include "carshare/oracle.hpp"
#include "carshare/policies.hpp"
#include "carshare/runner.hpp"

namespace carshare {

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void pass(const std::string& what) {
    if (ok) detail = what;
  }
};

std::string kstr(Count k) { return "k=" + std::to_string(k); }

std::string mismatch(const std::string& where, const Ratio& got, const Rational& want) {
  return where + ": ratio " + got.str() + ", expected " + to_string(want);
}

/// Calls fn on every demand vector with n stages and entries in [0, cap].
void for_each_demands(std::size_t n, Count cap,
                      const std::function<void(const std::vector<StageDemand>&)>& fn) {
  std::vector<StageDemand> d(n, StageDemand{0, 0});
  for (;;) {
    fn(d);
    std::size_t digit = 2 * n;
    for (;;) {
      if (digit == 0) return;
      --digit;
      Count& c = (digit % 2 == 0) ? d[digit / 2].il : d[digit / 2].ir;
      if (c < cap) {
        ++c;
        break;
      }
      c = 0;
    }
  }
}

constexpr int kFuzzPerK = 1000;
constexpr Count kFuzzKs[] = {2, 3, 5, 8};

/// Seeded fuzz corpus: n in [1, 6], per-direction demand in [0, 2k].
std::vector<Instance> fuzz_corpus(Count k, bool ordered) {
  std::mt19937_64 rng(kAcceptanceSeed + static_cast<std::uint64_t>(k));
  std::vector<Instance> out;
  out.reserve(kFuzzPerK);
  for (int t = 0; t < kFuzzPerK; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 6);
    out.push_back(ordered ? random_request_instance(k, n, 2 * k, rng)
                          : random_instance(k, n, 2 * k, rng));
  }
  return out;
}

std::string describe(const InductionViolation& v) {
  std::string prefix;
  for (const auto& d : v.offline_prefix) {
    prefix += "(" + std::to_string(d.gl) + "," + std::to_string(d.gr) + ")";
  }
  return "stage " + std::to_string(v.stage) + " inequality (" + v.inequality + "): " +
         to_string(v.alg_side) + " < " + to_string(v.bound) + " with offline prefix " + prefix;
}

std::string demands_str(const std::vector<StageDemand>& ds) {
  std::string s = "[";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i > 0) s += ",";
    s += "(" + std::to_string(ds[i].il) + "," + std::to_string(ds[i].ir) + ")";
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

Outcome gba_tightness() {
  Outcome o;
  for (Count k = 2; k <= 200; ++k) {
    Policy p = Policy::make(PolicyId::Gba);
    const Rational want(2 * k, k + k / 2);
    const auto out = adversary_thm6(p, k);
    if (out.ratio != Ratio(want)) o.fail(mismatch(kstr(k), out.ratio, want));
  }
  o.pass("k=2..200 all equal 2k/(k+floor(k/2))");
  return o;
}

Outcome argba_tightness() {
  Outcome o;
  for (Count k = 2; k <= 200; ++k) {
    Policy p = Policy::make(PolicyId::Argba);
    const Rational want(2 * k, k + k / 3);
    const auto out = adversary_thm7(p, k);
    if (out.ratio != Ratio(want)) o.fail(mismatch(kstr(k), out.ratio, want));
  }
  for (Count k = 2; k <= 10000; ++k) {
    if (Rational(2 * k, k + k / 3) > Rational(k, (2 * k) / 3)) {
      o.fail(kstr(k) + ": 2k/(k+floor(k/3)) > k/floor(2k/3)");
    }
  }
  o.pass("k=2..200 all equal 2k/(k+floor(k/3)); inequality holds for k=2..10000");
  return o;
}

Outcome prgba_expected() {
  Outcome o;
  const Rational want(4, 3);
  for (Count k = 2; k <= 100; ++k) {
    Policy p = Policy::make(PolicyId::Prgba);
    const auto out = adversary_thm9(p, k, Rational(2));
    if (out.ratio != Ratio(want)) o.fail(mismatch(kstr(k), out.ratio, want));
  }
  o.pass("k=2..100 expected ratio 4/3");
  return o;
}

Outcome prargba_expected() {
  Outcome o;
  const Rational want(3, 2);
  for (Count k = 2; k <= 100; ++k) {
    Policy p = Policy::make(PolicyId::Prargba);
    const auto out = adversary_thm8(p, k);
    if (out.ratio != Ratio(want)) o.fail(mismatch(kstr(k), out.ratio, want));
  }
  o.pass("k=2..100 expected ratio 3/2");
  return o;
}

Outcome agba_expected() {
  Outcome o;
  const Rational loads[] = {Rational(1), Rational(11, 10), Rational(5, 4),
                            Rational(3, 2), Rational(7, 4), Rational(2)};
  int pairs = 0;
  for (Count k = 2; k <= 100; ++k) {
    for (const auto& r : loads) {
      if (!is_integral(r * k)) continue;
      Policy p = Policy::make(PolicyId::Agba);
      const Rational want = (2 + r) / 3;
      const auto out = adversary_thm9(p, k, r);
      ++pairs;
      if (out.ratio != Ratio(want)) {
        o.fail(mismatch(kstr(k) + " R=" + to_string(r), out.ratio, want));
      }
    }
  }
  Policy p = Policy::make(PolicyId::Agba);
  const auto headline = adversary_thm9(p, 20, Rational(11, 10));
  if (headline.ratio != Ratio(Rational(31, 30)) || headline.ratio.value() > Rational(1034, 1000)) {
    o.fail("k=20 R=11/10: ratio " + headline.ratio.str() + ", expected 31/30 <= 1.034");
  }
  o.pass(std::to_string(pairs) + " (k, R) pairs equal (2+R)/3; k=20 R=11/10 gives 31/30");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::uint64_t instances = 0;
  std::uint64_t schedules = 0;
  for (Count k = 1; k <= 3; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for_each_demands(n, 2 * k, [&](const std::vector<StageDemand>& ds) {
        Count best = -1;
        enumerate_schedules(k, ds, UINT64_MAX, [&](const Schedule& s) {
          best = std::max(best, profit(s));
          ++schedules;
        });
        const Count dp = opt_dp(k, ds).profit;
        ++instances;
        if (dp != best) {
          o.fail(kstr(k) + " " + demands_str(ds) + ": opt_dp " + std::to_string(dp) +
                 ", enumeration " + std::to_string(best));
        }
      });
    }
  }
  o.pass(std::to_string(instances) + " instances, " + std::to_string(schedules) +
         " schedules: opt_dp equals the enumeration maximum");
  return o;
}

Outcome induction_suite() {
  Outcome o;
  std::uint64_t grid_runs = 0;
  for (PolicyId id : kAllPolicies) {
    Policy policy = Policy::make(id);
    const bool ordered = granularity(id) == Granularity::Request;
    for (Count k = 2; k <= 3 && o.ok; ++k) {
      for (std::size_t n = 1; n <= 3 && o.ok; ++n) {
        for_each_demands(n, 2 * k, [&](const std::vector<StageDemand>& ds) {
          if (!o.ok) return;
          const Instance counts = Instance::stage_model(k, ds);
          const Rational delta = delta_for(id, k, realized_load(counts));
          for (int ord = 0; ord < (ordered ? 2 : 1); ++ord) {
            Instance inst = counts;
            if (ordered) {
              std::vector<RequestSeq> streams;
              for (const auto& d : ds) streams.push_back(ord == 0 ? l_then_r(d) : r_then_l(d));
              inst = Instance::request_model(k, std::move(streams));
            }
            const ExpectedRun run = expected_run(policy, inst);
            const auto res = induction_check_all(k, ds, run.stages, delta, UINT64_MAX);
            ++grid_runs;
            if (!res.ok()) {
              o.fail(std::string(to_string(id)) + " " + kstr(k) + " " + demands_str(ds) +
                     (ordered ? (ord == 0 ? " L-then-R" : " R-then-L") : "") + ": " +
                     describe(*res.violation));
              return;
            }
          }
        });
      }
    }
  }

  std::uint64_t fuzz_runs = 0;
  for (Count k : kFuzzKs) {
    const std::vector<Instance> corpora[] = {fuzz_corpus(k, false), fuzz_corpus(k, true)};
    for (PolicyId id : kAllPolicies) {
      const bool ordered = granularity(id) == Granularity::Request;
      for (const Instance& inst : corpora[ordered ? 1 : 0]) {
        const EvalReport report = exact_expectation(id, inst);
        const Rational delta = delta_for(id, k, report.load);
        const auto res = induction_check(report, report.offline.schedule, delta);
        ++fuzz_runs;
        const std::string where = std::string(to_string(id)) + " " + kstr(k) + " digest " +
                                  report.digest;
        if (!res.ok()) o.fail(where + ": " + describe(*res.violation));
        const Rational bound = ratio_bound(id, k, report.load);
        if (report.ratio > Ratio(bound)) {
          o.fail(where + ": ratio " + report.ratio.str() + " above bound " + to_string(bound));
        }
      }
    }
  }
  o.pass(std::to_string(grid_runs) + " grid runs against every offline schedule, " +
         std::to_string(fuzz_runs) + " fuzzed runs against the OPT witness");
  return o;
}

Outcome exhaustive_gba() {
  Outcome o;
  for (Count k = 2; k <= 4; ++k) {
    Policy p = Policy::make(PolicyId::Gba);
    const Rational want(2 * k, k + k / 2);
    const auto res = exhaustive_worst(p, k, 2, 2 * k, 10'000'000);
    if (res.worst.ratio != Ratio(want)) {
      o.fail(mismatch(kstr(k) + " over " + std::to_string(res.instances) + " instances",
                      res.worst.ratio, want));
    }
  }
  o.pass("k=2..4 worst two-stage ratio equals 2k/(k+floor(k/2))");
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  std::uint64_t triples = 0;
  for (Count k = 1; k <= 50; ++k) {
    for (Count il = 0; il <= k; ++il) {
      for (Count ir = 0; ir <= k; ++ir) {
        const AlphaBeta ab = alpha_beta(il, ir, k);
        const Rational load(il + ir, k);
        const Rational di = std::min(Rational(1), Rational(3) / (2 + load));
        const std::string where = kstr(k) + " il=" + std::to_string(il) +
                                  " ir=" + std::to_string(ir);
        ++triples;
        if (ab.alpha > il || ab.beta > ir || ab.alpha + ab.beta > k) {
          o.fail(where + ": alpha/beta bound broken");
        }
        if (ab.alpha < 0 || ab.beta < 0) o.fail(where + ": negative target");
        if (load >= 1 && ab.alpha + ab.beta != k) o.fail(where + ": alpha + beta != k");
        if (k + ab.alpha != di * (k + il) || k + ab.beta != di * (k + ir)) {
          o.fail(where + ": k + alpha != delta_i (k + il)");
        }
      }
    }
  }

  std::uint64_t witnesses = 0;
  for (Count k : kFuzzKs) {
    for (const Instance& inst : fuzz_corpus(k, false)) {
      const OptResult opt = opt_dp(inst);
      OptStage prev{0, 0, k};
      for (std::size_t i = 0; i < inst.num_stages(); ++i) {
        const OptStage& s = opt.per_stage[i];
        const StageDemand& d = inst.demand(i);
        const bool ok = s.served_l <= d.il && s.served_l <= prev.served_r + prev.idle &&
                        s.served_r <= d.ir && s.served_r <= prev.served_l + prev.idle &&
                        s.idle >= 0 && s.served_l + s.served_r + s.idle == k;
        if (!ok) {
          o.fail(kstr(k) + " digest " + instance_digest(inst) + ": witness breaks stage " +
                 std::to_string(i + 1));
        }
        prev = s;
      }
      ++witnesses;
    }
  }
  o.pass(std::to_string(triples) + " (k, il, ir) triples exact; " + std::to_string(witnesses) +
         " OPT witnesses respect the per-stage bounds");
  return o;
}

Outcome monte_carlo_coherence() {
  Outcome o;
  constexpr std::uint64_t kTrials = 100000;
  constexpr std::uint64_t kSeed = 42;
  int checked = 0;
  for (const Fixture& fx : bundled_fixtures()) {
    for (PolicyId id : fx.policies) {
      if (!is_randomized(id)) continue;
      const Rational exact = exact_expectation(id, fx.instance).alg;
      const MonteCarloResult a = monte_carlo(id, fx.instance, kTrials, kSeed);
      const MonteCarloResult b = monte_carlo(id, fx.instance, kTrials, kSeed);
      const std::string where = fx.name + " " + std::string(to_string(id));
      const double gap = std::abs(a.mean - to_double(exact));
      if (gap > 3 * a.std_error) {
        o.fail(where + ": mean " + std::to_string(a.mean) + " vs exact " + to_string(exact) +
               " is " + std::to_string(gap) + " away, 3 SE = " + std::to_string(3 * a.std_error));
      }
      if (monte_carlo_json(id, fx.instance, a, exact) !=
          monte_carlo_json(id, fx.instance, b, exact)) {
        o.fail(where + ": same seed produced different output");
      }
      ++checked;
    }
  }
  o.pass(std::to_string(checked) +
         " randomized fixtures within 3 SE of the exact expectation; reruns byte-identical");
  return o;
}

using Runner = Outcome (*)();

struct Entry {
  Criterion meta;
  Runner run;
};

const Entry kEntries[] = {
    {{1, "gba-tightness", "thm6 adversary gives 2k/(k+floor(k/2)) for k=2..200", 1.0},
     gba_tightness},
    {{2, "argba-tightness", "thm7 adversary gives 2k/(k+floor(k/3)) for k=2..200", 1.0},
     argba_tightness},
    {{3, "prgba-expected", "thm9 adversary at R=2 gives E-ratio 4/3 for k=2..100", 1.0},
     prgba_expected},
    {{4, "prargba-expected", "thm8 adversary gives E-ratio 3/2 for k=2..100", 1.0},
     prargba_expected},
    {{5, "agba-expected", "thm9 adversary gives (2+R)/3 over the R grid", 2.0}, agba_expected},
    {{6, "oracle-equivalence", "opt_dp equals enumeration on k<=3, n<=3, demand<=2k", 60.0},
     oracle_equivalence},
    {{7, "induction-suite", "induction inequalities for every policy and offline schedule",
      300.0},
     induction_suite},
    {{8, "exhaustive-gba", "worst two-stage GBA ratio for k=2..4", 120.0}, exhaustive_gba},
    {{9, "lemma-suite", "alpha/beta bounds and identities; OPT witness bounds", 30.0},
     lemma_suite},
    {{10, "monte-carlo-coherence", "10^5-trial means within 3 SE; seeded reruns identical",
      120.0},
     monte_carlo_coherence},
};

const std::vector<Criterion>& criteria_table() {
  static const std::vector<Criterion> table = [] {
    std::vector<Criterion> t;
    for (const auto& e : kEntries) t.push_back(e.meta);
    return t;
  }();
  return table;
}

}  // namespace

std::span<const Criterion> acceptance_criteria() { return criteria_table(); }

CriterionResult run_criterion(int id) {
  const auto it = std::find_if(std::begin(kEntries), std::end(kEntries),
                               [&](const Entry& e) { return e.meta.id == id; });
  if (it == std::end(kEntries)) {
    throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
  }
  CriterionResult r;
  r.id = id;
  r.name = it->meta.name;
  r.limit_seconds = it->meta.limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = it->run();
    r.passed = o.ok;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.passed && r.seconds > r.limit_seconds) {
    r.passed = false;
    r.detail += " (over the time limit)";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(std::span<const int> ids) {
  std::vector<CriterionResult> out;
  if (ids.empty()) {
    for (const auto& c : acceptance_criteria()) out.push_back(run_criterion(c.id));
  } else {
    for (int id : ids) out.push_back(run_criterion(id));
  }
  return out;
}

std::string format_result(const CriterionResult& r, bool with_time) {
  std::string line = std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) +
                     "] " + r.name + ": " + r.detail;
  if (with_time) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.3f s / limit %g s)", r.seconds, r.limit_seconds);
    line += buf;
  }
  return line;
}

}  // namespace carshare
