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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "carshare/adversaries.hpp"
#include "carshare/errors.hpp"
#include "carshare/harness.hpp"
#include "carshare/instance_io.hpp"
#include "carshare/oracle.hpp"
#include "carshare/verification.hpp"

namespace carshare::cli {

namespace {

constexpr const char* kFooter = R"(Policies (--alg):
  gba      greedy balanced, stage model, deterministic
  argba    accept/reject greedy balanced, request model, deterministic
  prgba    gba with a randomized balanced split (needs --seed for run)
  prargba  argba with a randomized 2k/3 threshold (needs --seed for run)
  agba     adaptive targets from the stage load, randomized (needs --seed for run)

Theorems (adversary --theorem):
  6  deterministic stage policies: (k,k) then a flood, ratio 2k/(k+floor(k/2)) for gba
  7  deterministic request policies: k (0,1)'s, then k (1,0)'s and k (0,1)'s
  8  randomized request policies: thm7 on expectations, ratio 3/2 for prargba
  9  stage policies under load R in [1,2]: (floor(Rk/2), ceil(Rk/2)) then a flood

Exit codes: 0 success, 1 invalid input, 2 budget refusal.)";

enum class Format { Json, Csv };

struct Options {
  std::string alg;
  std::string instance;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  bool exact = false;
  std::size_t coin_budget = 30;
  int theorem = 0;
  Count k = 0;
  std::string load = "2";
  std::size_t stages = 2;
  Count cap = 0;
  std::uint64_t budget = 10'000'000;
  std::string family;
  Count k_min = 2;
  Count k_max = 10;
  std::vector<std::string> loads;
  std::uint64_t trials = 100000;
  std::vector<int> criteria;
  std::string out_dir;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ContractError("--format must be json or csv, got '" + s + "'");
}

PolicyId policy_arg(const std::string& alg) {
  if (alg.empty()) throw ContractError("--alg is required");
  return parse_policy_id(alg);
}

Rational rational_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ContractError(flag + ": " + e.what());
  }
}

void emit_report(std::ostream& out, const EvalReport& r, Format f) {
  if (f == Format::Json) {
    out << report_json(r);
  } else {
    out << report_csv_header() << report_csv_row(r);
  }
}

EvalReport report_for(PolicyId id, const Instance& inst, const std::vector<std::string>& notes) {
  EvalReport r = exact_expectation(id, inst);
  r.notes.insert(r.notes.end(), notes.begin(), notes.end());
  return r;
}

/// Default instance of `verify --alg`: the opening move of the matching
/// adversary, as in the bundled fixtures.
Instance verify_instance(PolicyId id, Count k) {
  if (granularity(id) == Granularity::Request) {
    RequestSeq first(static_cast<std::size_t>(k), Direction::L);
    first.insert(first.end(), static_cast<std::size_t>(k), Direction::R);
    return Instance::request_model(k, {first, RequestSeq(static_cast<std::size_t>(k),
                                                         Direction::L)});
  }
  return Instance::stage_model(k, {{k, k}, {0, k}});
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const PolicyId id = policy_arg(o.alg);
  const Format f = parse_format(o.format);
  const Instance inst = load_instance(o.instance);
  EvalReport r;
  if (o.exact) {
    r = exact_expectation(id, inst, o.coin_budget);
  } else {
    if (is_randomized(id) && !o.seed) {
      throw ContractError("--seed is required for randomized policy " + o.alg +
                          " (or pass --exact for the expectation)");
    }
    if (!is_randomized(id) && o.seed) {
      err << "note: " << o.alg << " is deterministic; --seed ignored\n";
    }
    r = evaluate(id, inst, o.seed);
  }
  for (const auto& n : r.notes) err << "note: " << n << "\n";
  emit_report(out, r, f);
  return kExitOk;
}

int cmd_opt(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.instance);
  const OptResult opt = opt_dp(inst);
  if (parse_format(o.format) == Format::Json) {
    out << opt_json(inst, opt);
  } else {
    out << "stage,served_l,served_r,idle\n";
    for (std::size_t i = 0; i < opt.per_stage.size(); ++i) {
      const auto& s = opt.per_stage[i];
      out << i + 1 << ',' << s.served_l << ',' << s.served_r << ',' << s.idle << '\n';
    }
    out << "total,,," << opt.profit << '\n';
  }
  return kExitOk;
}

int cmd_adversary(const Options& o, std::ostream& out) {
  const PolicyId id = policy_arg(o.alg);
  const Format f = parse_format(o.format);
  Policy policy = Policy::make(id);
  AdversaryOutcome res;
  switch (o.theorem) {
    case 6:
      res = adversary_thm6(policy, o.k);
      break;
    case 7:
      res = adversary_thm7(policy, o.k);
      break;
    case 8:
      res = adversary_thm8(policy, o.k);
      break;
    case 9:
      res = adversary_thm9(policy, o.k, rational_arg("--R", o.load));
      break;
    default:
      throw ContractError("--theorem must be 6, 7, 8 or 9");
  }
  EvalReport r = report_for(id, res.instance, {"adversary branch: " + res.branch});
  if (r.ratio != res.ratio) {
    throw std::logic_error("replayed ratio " + r.ratio.str() + " differs from adversary ratio " +
                           res.ratio.str());
  }
  emit_report(out, r, f);
  return kExitOk;
}

int cmd_exhaustive(const Options& o, std::ostream& out) {
  const PolicyId id = policy_arg(o.alg);
  const Format f = parse_format(o.format);
  Policy policy = Policy::make(id);
  const ExhaustiveResult res = exhaustive_worst(policy, o.k, o.stages, o.cap, o.budget);
  emit_report(out,
              report_for(id, res.worst.instance,
                         {"worst of " + std::to_string(res.instances) + " instances"}),
              f);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const PolicyId id = policy_arg(o.alg);
  const Format f = parse_format(o.format);
  Family family;
  if (o.family == "thm6") {
    family = Family::Thm6;
  } else if (o.family == "thm7") {
    family = Family::Thm7;
  } else if (o.family == "thm8") {
    family = Family::Thm8;
  } else if (o.family == "thm9") {
    family = Family::Thm9;
  } else {
    throw ContractError("--family must be thm6, thm7, thm8 or thm9, got '" + o.family + "'");
  }
  if (o.k_min < 2 || o.k_max < o.k_min) throw ContractError("need 2 <= --k-min <= --k-max");
  std::vector<Count> ks;
  for (Count k = o.k_min; k <= o.k_max; ++k) ks.push_back(k);
  std::vector<Rational> loads;
  for (const auto& s : o.loads) loads.push_back(rational_arg("--R", s));
  const auto rows = sweep(id, ks, family, loads);
  out << (f == Format::Json ? sweep_json(rows) : sweep_csv(rows));
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.alg.empty()) {
    const auto results = run_acceptance(o.criteria);
    bool all = true;
    for (const auto& r : results) {
      out << format_result(r, false) << "\n";
      err << "criterion " << r.id << ": " << r.seconds << " s\n";
      all = all && r.passed;
    }
    return all ? kExitOk : kExitInvalid;
  }
  const PolicyId id = policy_arg(o.alg);
  if (o.trials < 1) throw ContractError("--trials must be positive");
  const std::uint64_t seed = o.seed.value_or(0);
  if (!o.seed) err << "note: no --seed given; using 0\n";
  const Instance inst =
      o.instance.empty() ? verify_instance(id, o.k < 2 ? 5 : o.k) : load_instance(o.instance);
  const Rational exact = exact_expectation(id, inst, o.coin_budget).alg;
  const MonteCarloResult mc = monte_carlo(id, inst, o.trials, seed);
  out << monte_carlo_json(id, inst, mc, exact);
  const double gap = std::abs(mc.mean - to_double(exact));
  return gap <= 3 * mc.std_error ? kExitOk : kExitInvalid;
}

int cmd_fixtures(const Options& o, std::ostream& out) {
  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  for (const Fixture& fx : bundled_fixtures()) {
    const auto path = dir / (fx.name + ".json");
    std::ofstream file(path);
    if (!file) throw ContractError("cannot write '" + path.string() + "'");
    file << instance_to_json(fx.instance) << "\n";
    out << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online car-sharing scheduling: policies, offline optimum, adversaries",
               "carshare"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Options o;

  auto add_alg = [&](CLI::App* sub) {
    sub->add_option("--alg", o.alg, "Policy id: gba, argba, prgba, prargba, agba");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format: json or csv")->capture_default_str();
  };

  auto* run_cmd = app.add_subcommand("run", "Run a policy on an instance file");
  add_alg(run_cmd);
  run_cmd->add_option("--instance", o.instance, "Instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", o.seed, "Seed for randomized policies");
  run_cmd->add_flag("--exact", o.exact, "Report the exact expectation over all coin outcomes");
  run_cmd->add_option("--coin-budget", o.coin_budget, "Most coins per outcome path for --exact")
      ->capture_default_str();
  add_format(run_cmd);

  auto* opt_cmd = app.add_subcommand("opt", "Offline optimum of an instance file");
  opt_cmd->add_option("--instance", o.instance, "Instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  add_format(opt_cmd);

  auto* adv_cmd = app.add_subcommand("adversary", "Play a lower-bound adversary");
  adv_cmd->add_option("--theorem", o.theorem, "6, 7, 8 or 9")->required();
  add_alg(adv_cmd);
  adv_cmd->add_option("--k", o.k, "Number of servers")->required();
  adv_cmd->add_option("--R", o.load, "Load bound for theorem 9, p/q or decimal")
      ->capture_default_str();
  adv_cmd->add_option("--seed", o.seed, "Accepted and ignored; adversaries use expectations");
  add_format(adv_cmd);

  auto* exh_cmd = app.add_subcommand("exhaustive", "Worst ratio over all small instances");
  add_alg(exh_cmd);
  exh_cmd->add_option("--k", o.k, "Number of servers")->required();
  exh_cmd->add_option("--stages", o.stages, "Number of stages")->capture_default_str();
  exh_cmd->add_option("--cap", o.cap, "Largest per-direction demand")->required();
  exh_cmd->add_option("--budget", o.budget, "Most instances to search")->capture_default_str();
  add_format(exh_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Adversary ratios over a range of k");
  add_alg(sweep_cmd);
  sweep_cmd->add_option("--family", o.family, "thm6, thm7, thm8 or thm9")->required();
  sweep_cmd->add_option("--k-min", o.k_min, "Smallest k")->capture_default_str();
  sweep_cmd->add_option("--k-max", o.k_max, "Largest k")->capture_default_str();
  sweep_cmd->add_option("--R", o.loads, "Load bounds for thm9 (repeatable)");
  add_format(sweep_cmd);

  auto* verify_cmd = app.add_subcommand(
      "verify", "Without --alg: the acceptance suite. With --alg: Monte Carlo vs exact");
  add_alg(verify_cmd);
  verify_cmd->add_option("--k", o.k, "Servers for the default instance (5 if unset)");
  verify_cmd->add_option("--instance", o.instance, "Instance JSON file")
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
  verify_cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  verify_cmd->add_option("--coin-budget", o.coin_budget, "Most coins per outcome path")
      ->capture_default_str();
  verify_cmd->add_option("--criterion", o.criteria, "Acceptance criteria to run (repeatable)");

  auto* fx_cmd = app.add_subcommand("fixtures", "Write the bundled fixture instances");
  fx_cmd->add_option("--out", o.out_dir, "Directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (*run_cmd) return cmd_run(o, out, err);
    if (*opt_cmd) return cmd_opt(o, out);
    if (*adv_cmd) return cmd_adversary(o, out);
    if (*exh_cmd) return cmd_exhaustive(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out);
    if (*verify_cmd) return cmd_verify(o, out, err);
    if (*fx_cmd) return cmd_fixtures(o, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace carshare::cli
