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

// Offline optimum. The offline scheduler sees every stage in advance, so
// request order inside a stage is irrelevant and F instances are reduced to
// their counts.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carshare/model.hpp"

namespace carshare {

struct OptStage {
  Count served_l = 0;  // (0,1)'s accepted
  Count served_r = 0;  // (1,0)'s accepted
  Count idle = 0;      // k - served_l - served_r

  bool operator==(const OptStage&) const = default;
};

struct OptResult {
  Count profit = 0;
  Schedule schedule{2, {}};
  std::vector<OptStage> per_stage;
};

/// Maximum total profit over all feasible schedules, with a canonical witness:
/// stage by stage, the lexicographically largest (served_l, served_r) that
/// still attains the optimum.
///
/// Backward DP over the previous stage's decision (pl, pr), which fixes the
/// allocation [pr, k - pl - pr, pl]. A decision (ol, or) is reachable iff
/// ol <= min(il, k - pl) and or <= min(ir, k - pr), so the best continuation
/// is a 2-D prefix maximum and each stage costs O(k^2).
OptResult opt_dp(const Instance& inst);
/// Same, from raw counts. Accepts k = 1, which Instance does not.
OptResult opt_dp(Count k, std::span<const StageDemand> demands);

/// Calls `visit` once per feasible schedule, depth-first with decisions in
/// ascending (gl, gr) order. Throws BudgetExceeded without visiting anything
/// when (k+1)^(2n) exceeds `budget`.
void enumerate_schedules(const Instance& inst, std::uint64_t budget,
                         const std::function<void(const Schedule&)>& visit);
void enumerate_schedules(Count k, std::span<const StageDemand> demands, std::uint64_t budget,
                         const std::function<void(const Schedule&)>& visit);

struct ScheduleViolation {
  std::size_t stage = 0;  // 1-based
  /// One of "L1-cap", "R1-cap", "capacity-0", "capacity-1", "k-cap",
  /// "non-negative", "stage-count", "server-count".
  std::string bound;
  std::string message;
};

struct ValidationReport {
  std::optional<ScheduleViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// Replays `s` from [0, k, 0] and reports the first violated bound.
ValidationReport validate_schedule(const Instance& inst, const Schedule& s);

/// Same replay for raw decisions, which may break even the per-stage k cap
/// that Schedule enforces on construction.
ValidationReport validate_decisions(const Instance& inst, std::span<const StageDecision> decisions);

}  // namespace carshare
