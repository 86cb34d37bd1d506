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

#include "carshare/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "carshare/adversaries.hpp"
#include "carshare/errors.hpp"
#include "carshare/instance_io.hpp"

namespace carshare {

namespace {

using ojson = nlohmann::ordered_json;

// Two-sided 99% normal quantile.
constexpr double kZ99 = 2.5758293035489004;

Rational clamp_load(const Rational& r) {
  if (r < 1) return Rational(1);
  if (r > 2) return Rational(2);
  return r;
}

std::string decimal(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<std::string> notes_for(PolicyId id, const Instance& inst) {
  std::vector<std::string> notes;
  if (granularity(id) == Granularity::Request && inst.model() == Model::S) {
    notes.push_back(std::string(to_string(id)) +
                    " is a request policy; count-only stages are played in L-then-R order");
  }
  if (granularity(id) == Granularity::Stage && inst.model() == Model::F) {
    notes.push_back(std::string(to_string(id)) +
                    " is a stage policy; ordered stages are reduced to their counts");
  }
  return notes;
}

EvalReport assemble(PolicyId id, const Instance& inst, std::vector<ExpectedDecision> decisions,
                    Rational alg) {
  EvalReport r;
  r.policy = id;
  r.k = inst.k();
  r.model = inst.model();
  r.demands = inst.demands();
  r.decisions = std::move(decisions);
  r.alg = std::move(alg);
  r.offline = opt_dp(inst);
  r.opt = r.offline.profit;
  r.ratio = Ratio::of(Rational(r.opt), r.alg);
  r.load = realized_load(inst);
  r.digest = instance_digest(inst);
  r.notes = notes_for(id, inst);
  r.trace = make_trace(inst.k(), r.decisions, r.offline.schedule.decisions(),
                       delta_for(id, inst.k(), clamp_load(r.load)));
  return r;
}

Instance instance_of(const EvalReport& report) {
  return Instance::stage_model(report.k, report.demands);
}

ojson rational_json(const Rational& x, bool as_string) {
  if (!as_string && is_integral(x)) return floor_int(x);
  return to_string(x);
}

ojson strings(const std::vector<Rational>& xs) {
  ojson arr = ojson::array();
  for (const auto& x : xs) arr.push_back(to_string(x));
  return arr;
}

std::string joined(const std::vector<Rational>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ';';
    out += to_string(xs[i]);
  }
  return out;
}

}  // namespace

Rational delta_for(PolicyId id, Count k, const Rational& load_bound) {
  if (k < 1) throw ContractError("delta needs k >= 1");
  switch (id) {
    case PolicyId::Gba:
      return Rational(k + k / 2, 2 * k);
    case PolicyId::Argba:
      return Rational(k + k / 3, 2 * k);
    case PolicyId::Prgba:
      return Rational(3, 4);
    case PolicyId::Prargba:
      return Rational(2, 3);
    case PolicyId::Agba:
      return Rational(3) / (2 + clamp_load(load_bound));
  }
  throw std::logic_error("unknown policy id");
}

Rational ratio_bound(PolicyId id, Count k, const Rational& load_bound) {
  return 1 / delta_for(id, k, load_bound);
}

Rational realized_load(const Instance& inst) {
  const Count k = inst.k();
  Count most = 0;
  for (const auto& d : inst.demands()) {
    most = std::max(most, std::min(d.il, k) + std::min(d.ir, k));
  }
  return Rational(most, k);
}

InductionTrace make_trace(Count k, std::span<const ExpectedDecision> alg,
                          std::span<const StageDecision> offline, const Rational& delta) {
  if (alg.size() != offline.size()) {
    throw ContractError("trace needs one ALG and one offline decision per stage");
  }
  InductionTrace t;
  t.delta = delta;
  Rational a = 0;
  Count b = 0;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    const Rational& gl = alg[i].gl;
    const Rational& gr = alg[i].gr;
    const Rational gf = k - gl - gr;
    const Count ol = offline[i].gl;
    const Count orr = offline[i].gr;
    const Count of = k - ol - orr;
    a += gl + gr;
    b += ol + orr;
    t.A.push_back(a);
    t.B.push_back(Rational(b));
    t.X.push_back(a + gr + gf);
    t.Y.push_back(Rational(b + orr + of));
    t.U.push_back(a + gl + gf);
    t.V.push_back(Rational(b + ol + of));
  }
  return t;
}

EvalReport evaluate(PolicyId id, const Instance& inst, std::optional<std::uint64_t> seed) {
  Policy policy = Policy::make(id);
  std::vector<StageDecision> realized;
  if (policy.randomized()) {
    if (!seed) {
      throw ContractError("policy " + std::string(to_string(id)) +
                          " is randomized and needs a seed");
    }
    SeededCoin coin(*seed);
    realized = run_policy(policy, inst, coin);
  } else {
    NoCoin coin;
    realized = run_policy(policy, inst, coin);
  }
  std::vector<ExpectedDecision> decisions;
  Count alg = 0;
  for (const auto& d : realized) {
    decisions.push_back({Rational(d.gl), Rational(d.gr)});
    alg += d.served();
  }
  EvalReport r = assemble(id, inst, std::move(decisions), Rational(alg));
  if (policy.randomized()) r.seed = seed;
  return r;
}

EvalReport exact_expectation(PolicyId id, const Instance& inst, std::size_t coin_budget) {
  Policy policy = Policy::make(id);
  ExpectedRun run = expected_run(policy, inst, coin_budget);
  EvalReport r = assemble(id, inst, std::move(run.stages), std::move(run.profit));
  r.expectation = policy.randomized();
  return r;
}

MonteCarloResult monte_carlo(PolicyId id, const Instance& inst, std::uint64_t trials,
                             std::uint64_t seed) {
  if (trials < 1) throw ContractError("monte_carlo needs at least one trial");
  Policy policy = Policy::make(id);
  SeededCoin coin(seed);
  // Welford's running mean and squared deviation.
  double mean = 0;
  double m2 = 0;
  for (std::uint64_t t = 1; t <= trials; ++t) {
    Count profit = 0;
    for (const auto& d : run_policy(policy, inst, coin)) profit += d.served();
    const double x = static_cast<double>(profit);
    const double delta = x - mean;
    mean += delta / static_cast<double>(t);
    m2 += delta * (x - mean);
  }
  MonteCarloResult mc;
  mc.trials = trials;
  mc.seed = seed;
  mc.mean = mean;
  mc.stddev = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1)) : 0.0;
  mc.std_error = mc.stddev / std::sqrt(static_cast<double>(trials));
  mc.ci99_low = mean - kZ99 * mc.std_error;
  mc.ci99_high = mean + kZ99 * mc.std_error;
  return mc;
}

InductionResult induction_check(const EvalReport& report, const Schedule& offline,
                                const Rational& delta) {
  const Instance inst = instance_of(report);
  const ValidationReport v = validate_schedule(inst, offline);
  if (!v.ok()) {
    throw ContractError("offline schedule is infeasible at stage " +
                        std::to_string(v.violation->stage) + " (" + v.violation->bound +
                        "): " + v.violation->message);
  }
  const InductionTrace t = make_trace(report.k, report.decisions, offline.decisions(), delta);
  InductionResult result;
  for (std::size_t i = 0; i < t.A.size(); ++i) {
    const std::tuple<const char*, const Rational&, const Rational&> checks[] = {
        {"i", t.A[i], t.B[i]}, {"ii", t.X[i], t.Y[i]}, {"iii", t.U[i], t.V[i]}};
    for (const auto& [name, lhs, rhs] : checks) {
      const Rational bound = delta * rhs;
      if (lhs < bound) {
        const auto& ds = offline.decisions();
        result.violation = InductionViolation{
            i + 1, name, lhs, bound, std::vector<StageDecision>(ds.begin(), ds.begin() + i + 1)};
        return result;
      }
    }
  }
  return result;
}

InductionResult induction_check_all(Count k, std::span<const StageDemand> demands,
                                    std::span<const ExpectedDecision> alg,
                                    const Rational& delta, std::uint64_t budget) {
  const std::size_t n = demands.size();
  if (alg.size() != n) throw ContractError("one ALG decision per stage is required");
  if (delta <= 0) throw ContractError("delta must be positive");
  const std::uint64_t total = saturating_pow(static_cast<std::uint64_t>(k + 1), 2 * n);
  if (total > budget) {
    throw BudgetExceeded("offline schedule search over up to " + std::to_string(total) +
                             " schedules exceeds budget " + std::to_string(budget),
                         total, budget);
  }

  // The offline side is an integer, so each inequality becomes an integer cap.
  std::vector<Rational> a(n), x(n), u(n);
  std::vector<Count> max_b(n), max_y(n), max_v(n);
  Rational acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational gf = k - alg[i].gl - alg[i].gr;
    acc += alg[i].gl + alg[i].gr;
    a[i] = acc;
    x[i] = acc + alg[i].gr + gf;
    u[i] = acc + alg[i].gl + gf;
    max_b[i] = floor_int(a[i] / delta);
    max_y[i] = floor_int(x[i] / delta);
    max_v[i] = floor_int(u[i] / delta);
  }

  InductionResult result;
  std::vector<StageDecision> prefix(n);
  // Returns false once a violation is recorded.
  auto dfs = [&](auto&& self, std::size_t i, Count pl, Count pr, Count b) -> bool {
    if (i == n) return true;
    const Count top_l = std::min(std::max<Count>(demands[i].il, 0), k - pl);
    const Count top_r = std::min(std::max<Count>(demands[i].ir, 0), k - pr);
    for (Count ol = 0; ol <= top_l; ++ol) {
      for (Count orr = 0; orr <= top_r && ol + orr <= k; ++orr) {
        const Count nb = b + ol + orr;
        const Count y = nb + k - ol;
        const Count v = nb + k - orr;
        const char* broken = nullptr;
        const Rational* lhs = nullptr;
        Count rhs = 0;
        if (nb > max_b[i]) {
          broken = "i", lhs = &a[i], rhs = nb;
        } else if (y > max_y[i]) {
          broken = "ii", lhs = &x[i], rhs = y;
        } else if (v > max_v[i]) {
          broken = "iii", lhs = &u[i], rhs = v;
        }
        prefix[i] = {ol, orr};
        if (broken) {
          result.violation = InductionViolation{
              i + 1, broken, *lhs, delta * rhs,
              std::vector<StageDecision>(prefix.begin(), prefix.begin() + i + 1)};
          return false;
        }
        if (!self(self, i + 1, ol, orr, nb)) return false;
      }
    }
    return true;
  };
  dfs(dfs, 0, 0, 0, 0);
  return result;
}

InductionResult induction_check_all(const EvalReport& report, const Rational& delta,
                                    std::uint64_t budget) {
  return induction_check_all(report.k, report.demands, report.decisions, delta, budget);
}

std::vector<SweepRow> sweep(PolicyId id, std::span<const Count> ks, Family family,
                            std::span<const Rational> loads) {
  std::vector<SweepRow> rows;
  auto add = [&](Count k, std::optional<Rational> load, const AdversaryOutcome& out) {
    rows.push_back(SweepRow{id, k, std::move(load), instance_digest(out.instance), out.alg,
                            out.opt, out.ratio});
  };
  for (Count k : ks) {
    Policy policy = Policy::make(id);
    switch (family) {
      case Family::Thm6:
        add(k, std::nullopt, adversary_thm6(policy, k));
        break;
      case Family::Thm7:
        add(k, std::nullopt, adversary_thm7(policy, k));
        break;
      case Family::Thm8:
        add(k, std::nullopt, adversary_thm8(policy, k));
        break;
      case Family::Thm9: {
        const std::vector<Rational> fallback{Rational(2)};
        const auto rs = loads.empty() ? std::span<const Rational>(fallback) : loads;
        for (const auto& r : rs) {
          if (!is_integral(r * k)) continue;
          add(k, r, adversary_thm9(policy, k, r));
        }
        break;
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
    if (x.k != y.k) return x.k < y.k;
    const Rational rx = x.load_bound.value_or(Rational(0));
    const Rational ry = y.load_bound.value_or(Rational(0));
    if (rx != ry) return rx < ry;
    return x.digest < y.digest;
  });
  return rows;
}

std::string report_json(const EvalReport& r) {
  ojson doc;
  doc["policy"] = std::string(to_string(r.policy));
  doc["k"] = r.k;
  doc["model"] = std::string(1, static_cast<char>(r.model));
  doc["seed"] = r.seed ? ojson(*r.seed) : ojson(nullptr);
  doc["digest"] = r.digest;
  ojson stages = ojson::array();
  for (std::size_t i = 0; i < r.demands.size(); ++i) {
    ojson s;
    s["il"] = r.demands[i].il;
    s["ir"] = r.demands[i].ir;
    s["gl"] = rational_json(r.decisions[i].gl, r.expectation);
    s["gr"] = rational_json(r.decisions[i].gr, r.expectation);
    stages.push_back(std::move(s));
  }
  doc["stages"] = std::move(stages);
  doc["alg"] = to_string(r.alg);
  doc["opt"] = r.opt;
  doc["ratio"] = r.ratio.str();
  doc["ratio_decimal"] = r.ratio.infinite() ? ojson(nullptr) : ojson(r.ratio.decimal());
  doc["R"] = to_string(r.load);
  doc["expectation"] = r.expectation;
  ojson trace;
  trace["delta"] = to_string(r.trace.delta);
  trace["A"] = strings(r.trace.A);
  trace["B"] = strings(r.trace.B);
  trace["X"] = strings(r.trace.X);
  trace["Y"] = strings(r.trace.Y);
  trace["U"] = strings(r.trace.U);
  trace["V"] = strings(r.trace.V);
  doc["trace"] = std::move(trace);
  if (!r.notes.empty()) doc["notes"] = r.notes;
  return doc.dump(2) + "\n";
}

std::string report_csv_header() {
  return "policy,k,model,seed,digest,stages,alg,opt,ratio,ratio_decimal,R,delta,A,B,X,Y,U,V\n";
}

std::string report_csv_row(const EvalReport& r) {
  std::string stages;
  for (std::size_t i = 0; i < r.demands.size(); ++i) {
    if (i > 0) stages += ';';
    stages += std::to_string(r.demands[i].il) + ':' + std::to_string(r.demands[i].ir) + ':' +
              to_string(r.decisions[i].gl) + ':' + to_string(r.decisions[i].gr);
  }
  std::string out = std::string(to_string(r.policy)) + ',' + std::to_string(r.k) + ',' +
                    static_cast<char>(r.model) + ',' +
                    (r.seed ? std::to_string(*r.seed) : std::string()) + ',' + r.digest + ',' +
                    stages + ',' + to_string(r.alg) + ',' + std::to_string(r.opt) + ',' +
                    r.ratio.str() + ',' + decimal(r.ratio.decimal()) + ',' + to_string(r.load) +
                    ',' + to_string(r.trace.delta);
  for (const auto* col : {&r.trace.A, &r.trace.B, &r.trace.X, &r.trace.Y, &r.trace.U,
                          &r.trace.V}) {
    out += ',' + joined(*col);
  }
  return out + '\n';
}

std::string sweep_json(std::span<const SweepRow> rows) {
  ojson arr = ojson::array();
  for (const auto& row : rows) {
    ojson o;
    o["policy"] = std::string(to_string(row.policy));
    o["k"] = row.k;
    o["R"] = row.load_bound ? ojson(to_string(*row.load_bound)) : ojson(nullptr);
    o["digest"] = row.digest;
    o["alg"] = to_string(row.alg);
    o["opt"] = row.opt;
    o["ratio"] = row.ratio.str();
    o["ratio_decimal"] = row.ratio.infinite() ? ojson(nullptr) : ojson(row.ratio.decimal());
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "policy,k,R,digest,alg,opt,ratio,ratio_decimal\n";
  for (const auto& row : rows) {
    out += std::string(to_string(row.policy)) + ',' + std::to_string(row.k) + ',' +
           (row.load_bound ? to_string(*row.load_bound) : std::string()) + ',' + row.digest +
           ',' + to_string(row.alg) + ',' + std::to_string(row.opt) + ',' + row.ratio.str() +
           ',' + decimal(row.ratio.decimal()) + '\n';
  }
  return out;
}

std::string opt_json(const Instance& inst, const OptResult& opt) {
  ojson doc;
  doc["k"] = inst.k();
  doc["digest"] = instance_digest(inst);
  doc["opt"] = opt.profit;
  ojson stages = ojson::array();
  for (const auto& s : opt.per_stage) {
    ojson o;
    o["served_l"] = s.served_l;
    o["served_r"] = s.served_r;
    o["idle"] = s.idle;
    stages.push_back(std::move(o));
  }
  doc["stages"] = std::move(stages);
  return doc.dump(2) + "\n";
}

std::string monte_carlo_json(PolicyId id, const Instance& inst, const MonteCarloResult& mc,
                             const std::optional<Rational>& exact) {
  ojson doc;
  doc["policy"] = std::string(to_string(id));
  doc["k"] = inst.k();
  doc["digest"] = instance_digest(inst);
  doc["trials"] = mc.trials;
  doc["seed"] = mc.seed;
  doc["mean"] = mc.mean;
  doc["stddev"] = mc.stddev;
  doc["std_error"] = mc.std_error;
  doc["ci99"] = {mc.ci99_low, mc.ci99_high};
  if (exact) {
    const double e = to_double(*exact);
    doc["exact"] = to_string(*exact);
    doc["within_3se"] = std::abs(mc.mean - e) <= 3 * mc.std_error;
    doc["within_ci99"] = mc.ci99_low <= e && e <= mc.ci99_high;
  }
  return doc.dump(2) + "\n";
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw ContractError("uniform_below needs a positive bound");
  // Reject the top sliver so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

Instance random_instance(Count k, std::size_t stages, Count max_demand, std::mt19937_64& rng) {
  if (max_demand < 0) throw ContractError("max_demand must be non-negative");
  std::vector<StageDemand> demands;
  demands.reserve(stages);
  const auto side = static_cast<std::uint64_t>(max_demand) + 1;
  for (std::size_t i = 0; i < stages; ++i) {
    const auto il = static_cast<Count>(uniform_below(rng, side));
    const auto ir = static_cast<Count>(uniform_below(rng, side));
    demands.push_back({il, ir});
  }
  return Instance::stage_model(k, std::move(demands));
}

Instance random_request_instance(Count k, std::size_t stages, Count max_demand,
                                 std::mt19937_64& rng) {
  const Instance counts = random_instance(k, stages, max_demand, rng);
  std::vector<RequestSeq> streams;
  for (const auto& d : counts.demands()) {
    RequestSeq seq = l_then_r(d);
    // Fisher-Yates with the portable draw.
    for (std::size_t i = seq.size(); i > 1; --i) {
      std::swap(seq[i - 1], seq[uniform_below(rng, i)]);
    }
    streams.push_back(std::move(seq));
  }
  return Instance::request_model(k, std::move(streams));
}

std::vector<Fixture> bundled_fixtures() {
  using P = PolicyId;
  auto s = [](Count k, std::vector<StageDemand> d) { return Instance::stage_model(k, d); };
  auto f = [](Count k, std::vector<std::string> seqs) {
    std::vector<RequestSeq> streams;
    for (const auto& text : seqs) {
      RequestSeq seq;
      for (char c : text) seq.push_back(c == 'L' ? Direction::L : Direction::R);
      streams.push_back(std::move(seq));
    }
    return Instance::request_model(k, std::move(streams));
  };
  return {
      {"thm6_k4", s(4, {{4, 4}, {0, 4}}), {P::Gba}, "gba: alg 6, opt 8, ratio 4/3"},
      {"thm6_k5", s(5, {{5, 5}, {5, 0}}), {P::Gba}, "gba: alg 7, opt 10, ratio 10/7"},
      {"thm7_k3", f(3, {"LLL"}), {P::Argba}, "argba stops after k (0,1)'s: ratio 3/2"},
      {"thm7_k4", f(4, {"LLLLRRRR", "LLLL"}), {P::Argba},
       "argba continues: alg 5, opt 8, ratio 8/5"},
      {"thm8_k4_stop", f(4, {"LLLL"}), {P::Prargba}, "prargba: E[alg] 8/3, ratio 3/2"},
      {"thm8_k4_continue", f(4, {"LLLLRRRR", "LLLL"}), {P::Prargba},
       "prargba on the continuation branch"},
      {"thm9_prgba_k5", s(5, {{5, 5}, {0, 5}}), {P::Prgba},
       "prgba: E[alg] 15/2, opt 10, ratio 4/3"},
      {"thm9_agba_k20_r11_10", s(20, {{11, 11}, {0, 20}}), {P::Agba},
       "agba at R = 11/10: alg 30, opt 31, ratio 31/30"},
      {"thm9_agba_k20_r3_2", s(20, {{15, 15}, {0, 20}}), {P::Agba},
       "agba at R = 3/2: ratio 7/6"},
      {"thm9_agba_k20_r2", s(20, {{20, 20}, {0, 20}}), {P::Agba}, "agba at R = 2: ratio 4/3"},
      {"agba_k100", s(100, {{50, 100}, {100, 0}}), {P::Agba},
       "agba: E[alg] 1200/7, opt 200, ratio 7/6"},
      {"empty_k3", s(3, {{0, 0}, {0, 0}}), {P::Gba, P::Argba, P::Prgba, P::Prargba, P::Agba},
       "no demand: alg 0, opt 0, ratio 1"},
  };
}

}  // namespace carshare
