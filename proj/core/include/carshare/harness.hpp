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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "carshare/model.hpp"
#include "carshare/oracle.hpp"
#include "carshare/policies.hpp"
#include "carshare/ratio.hpp"
#include "carshare/rational.hpp"
#include "carshare/runner.hpp"

namespace carshare {

// ---------------------------------------------------------------------------
// Bound registry: the guaranteed profit fraction delta (ALG >= delta * OPT)
// of each policy. The competitive ratio is 1 / delta.
//
//   gba      (k + floor(k/2)) / 2k
//   argba    (k + floor(k/3)) / 2k
//   prgba    3/4
//   prargba  2/3
//   agba     3 / (2 + R), R clamped to [1, 2]

Rational delta_for(PolicyId id, Count k, const Rational& load_bound = 2);
Rational ratio_bound(PolicyId id, Count k, const Rational& load_bound = 2);

/// max over stages of (min(il,k) + min(ir,k)) / k.
Rational realized_load(const Instance& inst);

// ---------------------------------------------------------------------------

/// Running sums for the induction. Index i holds stage i + 1.
///   A = accepted by ALG so far       B = accepted by the offline schedule
///   X = A + Gr + Gf                  Y = B + Or + Of
///   U = A + Gl + Gf                  V = B + Ol + Of
/// X and U are ALG's total if stage i+1 were a flood of k (0,1)'s or k
/// (1,0)'s respectively; Y and V are the offline counterparts.
struct InductionTrace {
  std::vector<Rational> A, B, X, Y, U, V;
  Rational delta;
};

InductionTrace make_trace(Count k, std::span<const ExpectedDecision> alg,
                          std::span<const StageDecision> offline, const Rational& delta);

struct EvalReport {
  PolicyId policy = PolicyId::Gba;
  Count k = 2;
  Model model = Model::S;
  std::optional<std::uint64_t> seed;
  /// True when `alg` is an exact expectation over all coin outcomes.
  bool expectation = false;
  std::vector<StageDemand> demands;
  std::vector<ExpectedDecision> decisions;
  Rational alg;
  Count opt = 0;
  Ratio ratio{Rational(1)};
  Rational load;
  std::string digest;
  OptResult offline;
  InductionTrace trace;
  /// Model-mismatch adaptations, e.g. a request policy on a count-only instance.
  std::vector<std::string> notes;
};

/// One realized run. `seed` is required for randomized policies
/// (ContractError otherwise) and ignored for deterministic ones.
EvalReport evaluate(PolicyId id, const Instance& inst, std::optional<std::uint64_t> seed);

/// Exact expected profit over all coin outcomes. Throws BudgetExceeded when an
/// outcome path needs more than `coin_budget` coins.
EvalReport exact_expectation(PolicyId id, const Instance& inst, std::size_t coin_budget = 30);

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  double std_error = 0;
  double ci99_low = 0;
  double ci99_high = 0;
};

MonteCarloResult monte_carlo(PolicyId id, const Instance& inst, std::uint64_t trials,
                             std::uint64_t seed);

struct InductionViolation {
  std::size_t stage = 0;  // 1-based
  /// "i" (A >= delta B), "ii" (X >= delta Y) or "iii" (U >= delta V).
  std::string inequality;
  Rational alg_side;
  Rational bound;  // delta times the offline side
  std::vector<StageDecision> offline_prefix;
};

struct InductionResult {
  std::optional<InductionViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// Checks the three inequalities at every stage against one offline schedule,
/// which may be any feasible schedule. Throws ContractError if `offline` is
/// infeasible for the report's instance.
InductionResult induction_check(const EvalReport& report, const Schedule& offline,
                                const Rational& delta);

/// Same check against every feasible offline schedule, by depth-first search
/// over schedule prefixes. Returns the first violation in DFS order.
/// Throws BudgetExceeded when (k+1)^(2n) exceeds `budget`.
InductionResult induction_check_all(const EvalReport& report, const Rational& delta,
                                    std::uint64_t budget);

/// The same search from raw (expected) ALG decisions, skipping report assembly.
InductionResult induction_check_all(Count k, std::span<const StageDemand> demands,
                                    std::span<const ExpectedDecision> alg,
                                    const Rational& delta, std::uint64_t budget);

// ---------------------------------------------------------------------------

enum class Family { Thm6, Thm7, Thm8, Thm9 };

struct SweepRow {
  PolicyId policy = PolicyId::Gba;
  Count k = 2;
  std::optional<Rational> load_bound;
  std::string digest;
  Rational alg;
  Count opt = 0;
  Ratio ratio{Rational(1)};
};

/// One row per k (and per R for the thm9 family), sorted by k, then R, then
/// digest. (k, R) pairs with non-integral R*k are skipped.
std::vector<SweepRow> sweep(PolicyId id, std::span<const Count> ks, Family family,
                            std::span<const Rational> loads = {});

// ---------------------------------------------------------------------------
// Emission.

std::string report_json(const EvalReport& report);
std::string report_csv_header();
std::string report_csv_row(const EvalReport& report);
std::string sweep_json(std::span<const SweepRow> rows);
std::string sweep_csv(std::span<const SweepRow> rows);
std::string opt_json(const Instance& inst, const OptResult& opt);
std::string monte_carlo_json(PolicyId id, const Instance& inst, const MonteCarloResult& mc,
                             const std::optional<Rational>& exact);

// ---------------------------------------------------------------------------

/// Uniform demands in [0, max_demand] per direction and stage.
Instance random_instance(Count k, std::size_t stages, Count max_demand, std::mt19937_64& rng);

/// Same demand distribution as an F instance, each stage's requests in a
/// uniformly random interleaving.
Instance random_request_instance(Count k, std::size_t stages, Count max_demand,
                                 std::mt19937_64& rng);

/// Uniform integer in [0, bound) that does not depend on the standard
/// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

struct Fixture {
  std::string name;
  Instance instance;
  /// Policies the fixture was built for.
  std::vector<PolicyId> policies;
  std::string note;
};

/// Instances behind every theorem construction and worked example; mirrored
/// by the JSON files under fixtures/.
std::vector<Fixture> bundled_fixtures();

}  // namespace carshare
