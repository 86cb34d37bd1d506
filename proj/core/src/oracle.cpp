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

#include "carshare/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "carshare/errors.hpp"

namespace carshare {

namespace {

constexpr Count kUnreachable = std::numeric_limits<Count>::min() / 4;

// Dense (k+1) x (k+1) table indexed by (gl, gr); cells with gl + gr > k are
// never read as states.
class Grid {
 public:
  explicit Grid(Count k, Count fill = 0)
      : side_(static_cast<std::size_t>(k + 1)), cells_(side_ * side_, fill) {}
  Count& at(Count a, Count b) { return cells_[static_cast<std::size_t>(a) * side_ + b]; }
  Count at(Count a, Count b) const { return cells_[static_cast<std::size_t>(a) * side_ + b]; }

 private:
  std::size_t side_;
  std::vector<Count> cells_;
};

}  // namespace

OptResult opt_dp(const Instance& inst) { return opt_dp(inst.k(), inst.demands()); }

OptResult opt_dp(Count k, std::span<const StageDemand> demands) {
  const std::size_t n = demands.size();
  if (k < 1) throw std::invalid_argument("opt_dp needs k >= 1");
  if (k > 20000) {
    throw std::invalid_argument("opt_dp table would need (k+1)^2 cells per stage; k too large");
  }

  // best[i](pl, pr): most profit from stages i..n-1 given stage i-1 decided (pl, pr).
  std::vector<Grid> best;
  best.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) best.emplace_back(k, 0);

  Grid prefix(k, kUnreachable);
  for (std::size_t i = n; i-- > 0;) {
    const Count il = std::min(demands[i].il, k);
    const Count ir = std::min(demands[i].ir, k);
    const Grid& after = best[i + 1];
    // prefix(a, b) = max over ol <= a, or <= b, ol + or <= k of ol + or + after(ol, or)
    for (Count a = 0; a <= il; ++a) {
      for (Count b = 0; b <= ir; ++b) {
        Count v = (a + b <= k) ? a + b + after.at(a, b) : kUnreachable;
        if (a > 0) v = std::max(v, prefix.at(a - 1, b));
        if (b > 0) v = std::max(v, prefix.at(a, b - 1));
        prefix.at(a, b) = v;
      }
    }
    Grid& here = best[i];
    for (Count pl = 0; pl <= k; ++pl) {
      for (Count pr = 0; pl + pr <= k; ++pr) {
        here.at(pl, pr) = prefix.at(std::min(il, k - pl), std::min(ir, k - pr));
      }
    }
  }

  OptResult result;
  result.profit = best[0].at(0, 0);
  std::vector<StageDecision> decisions;
  decisions.reserve(n);
  StageDecision prev{0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const Count target = best[i].at(prev.gl, prev.gr);
    const Count cap_l = std::min({demands[i].il, k, k - prev.gl});
    const Count cap_r = std::min({demands[i].ir, k, k - prev.gr});
    std::optional<StageDecision> pick;
    for (Count ol = cap_l; ol >= 0 && !pick; --ol) {
      for (Count orr = std::min(cap_r, k - ol); orr >= 0; --orr) {
        if (ol + orr + best[i + 1].at(ol, orr) == target) {
          pick = StageDecision{ol, orr};
          break;
        }
      }
    }
    if (!pick) {
      throw std::logic_error("opt_dp reconstruction failed");
    }
    decisions.push_back(*pick);
    result.per_stage.push_back({pick->gl, pick->gr, k - pick->gl - pick->gr});
    prev = *pick;
  }
  result.schedule = Schedule(k, std::move(decisions));
  return result;
}

void enumerate_schedules(const Instance& inst, std::uint64_t budget,
                         const std::function<void(const Schedule&)>& visit) {
  enumerate_schedules(inst.k(), inst.demands(), budget, visit);
}

void enumerate_schedules(Count k, std::span<const StageDemand> demands, std::uint64_t budget,
                         const std::function<void(const Schedule&)>& visit) {
  if (k < 1) throw std::invalid_argument("enumerate_schedules needs k >= 1");
  const auto bound = saturating_pow(static_cast<std::uint64_t>(k + 1),
                                    2 * static_cast<std::uint64_t>(demands.size()));
  if (bound > budget) {
    throw BudgetExceeded("schedule enumeration bound " + std::to_string(bound) +
                             " exceeds budget " + std::to_string(budget),
                         bound, budget);
  }
  std::vector<StageDecision> path;
  path.reserve(demands.size());
  const std::function<void(const Allocation&)> descend = [&](const Allocation& alloc) {
    const std::size_t i = path.size();
    if (i == demands.size()) {
      visit(Schedule(k, path));
      return;
    }
    for (const StageDecision& d : feasible_decisions(alloc, demands[i])) {
      path.push_back(d);
      descend(transition(alloc, d));
      path.pop_back();
    }
  };
  descend(Allocation::initial(k));
}

ValidationReport validate_schedule(const Instance& inst, const Schedule& s) {
  ValidationReport report;
  if (s.k() != inst.k()) {
    report.violation = ScheduleViolation{0, "server-count",
                                         "schedule is for k = " + std::to_string(s.k()) +
                                             ", instance has k = " + std::to_string(inst.k())};
    return report;
  }
  return validate_decisions(inst, s.decisions());
}

ValidationReport validate_decisions(const Instance& inst, std::span<const StageDecision> decisions) {
  ValidationReport report;
  Allocation alloc = Allocation::initial(inst.k());
  const std::size_t common = std::min(decisions.size(), inst.num_stages());
  for (std::size_t i = 0; i < common; ++i) {
    const StageDecision& d = decisions[i];
    if (auto b = violated_bound(alloc, inst.demand(i), d)) {
      std::string msg = "stage " + std::to_string(i + 1) + ": decision (" + std::to_string(d.gl) +
                        "," + std::to_string(d.gr) + ") violates " + std::string(bound_name(*b));
      switch (*b) {
        case Bound::Capacity0:
          msg += " (capacity at 0 is " + std::to_string(alloc.capacity_l()) + ")";
          break;
        case Bound::Capacity1:
          msg += " (capacity at 1 is " + std::to_string(alloc.capacity_r()) + ")";
          break;
        default:
          break;
      }
      report.violation = ScheduleViolation{i + 1, std::string(bound_name(*b)), std::move(msg)};
      return report;
    }
    alloc = transition(alloc, d);
  }
  if (decisions.size() != inst.num_stages()) {
    report.violation = ScheduleViolation{
        common + 1, "stage-count",
        "schedule has " + std::to_string(decisions.size()) + " stages, instance has " +
            std::to_string(inst.num_stages())};
  }
  return report;
}

}  // namespace carshare
