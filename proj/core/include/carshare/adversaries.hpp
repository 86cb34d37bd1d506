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

// Adaptive lower-bound adversaries. They observe a policy only through its
// public decide/step interface, or through exact expectations of its
// decisions for randomized policies; they never read policy internals.
//
//   thm6  deterministic stage policies:   (k,k) then a flood against the
//         direction the policy favoured
//   thm7  deterministic request policies: k (0,1)'s, then optionally k (1,0)'s
//         and k (0,1)'s in stage 2
//   thm8  the thm7 construction branching on expectations
//   thm9  stage policies under load R:    (floor(Rk/2), ceil(Rk/2)) then a flood

#include <cstdint>
#include <string>
#include <vector>

#include "carshare/model.hpp"
#include "carshare/policies.hpp"
#include "carshare/ratio.hpp"
#include "carshare/rational.hpp"
#include "carshare/runner.hpp"

namespace carshare {

struct AdversaryOutcome {
  Instance instance = Instance::stage_model(2, {{0, 0}});
  /// Exact expectation for randomized policies.
  Rational alg;
  Count opt = 0;
  Ratio ratio{Rational(1)};
  std::vector<ExpectedDecision> decisions;
  /// Which continuation the adversary chose, e.g. "flood-R".
  std::string branch;
};

/// Requires a deterministic stage policy (ContractError otherwise).
AdversaryOutcome adversary_thm6(Policy& policy, Count k);

/// Requires a deterministic request policy. Stops after k (0,1)'s when the
/// policy accepted at most floor(2k/3) of them.
AdversaryOutcome adversary_thm7(Policy& policy, Count k);

/// Any request policy. Both continuations are evaluated exactly and the one
/// with the larger ratio is returned; on a tie the thm7 rule applied to the
/// expected acceptance count decides.
AdversaryOutcome adversary_thm8(Policy& policy, Count k);

/// Any stage policy; requires 1 <= R <= 2 with R*k integral.
AdversaryOutcome adversary_thm9(Policy& policy, Count k, const Rational& load_bound);

struct ExhaustiveResult {
  AdversaryOutcome worst;
  std::uint64_t instances = 0;
};

/// Worst opt/alg over every S instance with exactly `stages` stages and
/// per-direction demand in [0, cap]. Request policies are played on both
/// canonical orderings (all (0,1)'s first, all (1,0)'s first). Randomized
/// policies are scored by exact expectation. The first maximal instance in
/// lexicographic demand order is the witness. Throws BudgetExceeded when the
/// instance count exceeds `budget`.
ExhaustiveResult exhaustive_worst(Policy& policy, Count k, std::size_t stages, Count cap,
                                  std::uint64_t budget);

}  // namespace carshare
