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

#include "carshare/model.hpp"

#include <algorithm>

namespace carshare {

StageDemand project(std::span<const Direction> seq) {
  StageDemand d;
  for (Direction r : seq) {
    (r == Direction::L ? d.il : d.ir) += 1;
  }
  return d;
}

RequestSeq l_then_r(const StageDemand& d) {
  RequestSeq seq(static_cast<std::size_t>(d.il), Direction::L);
  seq.insert(seq.end(), static_cast<std::size_t>(d.ir), Direction::R);
  return seq;
}

RequestSeq r_then_l(const StageDemand& d) {
  RequestSeq seq(static_cast<std::size_t>(d.ir), Direction::R);
  seq.insert(seq.end(), static_cast<std::size_t>(d.il), Direction::L);
  return seq;
}

namespace {

void check_k(Count k) {
  if (k < 2) {
    throw ModelError("k must be at least 2, got " + std::to_string(k));
  }
}

}  // namespace

Instance Instance::stage_model(Count k, std::vector<StageDemand> stages) {
  check_k(k);
  if (stages.empty()) {
    throw ModelError("instance needs at least one stage");
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stages[i].il < 0 || stages[i].ir < 0) {
      throw ModelError("negative demand in stage " + std::to_string(i + 1));
    }
  }
  Instance inst;
  inst.k_ = k;
  inst.model_ = Model::S;
  inst.demands_ = std::move(stages);
  return inst;
}

Instance Instance::request_model(Count k, std::vector<RequestSeq> streams) {
  check_k(k);
  if (streams.empty()) {
    throw ModelError("instance needs at least one stage");
  }
  Instance inst;
  inst.k_ = k;
  inst.model_ = Model::F;
  inst.demands_.reserve(streams.size());
  for (const auto& s : streams) {
    inst.demands_.push_back(project(s));
  }
  inst.streams_ = std::move(streams);
  return inst;
}

Instance Instance::as_stage_model() const { return stage_model(k_, demands_); }

std::string_view bound_name(Bound b) {
  switch (b) {
    case Bound::NonNegative: return "non-negative";
    case Bound::DemandL: return "L1-cap";
    case Bound::DemandR: return "R1-cap";
    case Bound::Capacity0: return "capacity-0";
    case Bound::Capacity1: return "capacity-1";
    case Bound::KCap: return "k-cap";
  }
  return "unknown";
}

std::optional<Bound> violated_bound(const Allocation& prev, const StageDemand& demand,
                                    const StageDecision& d) {
  if (d.gl < 0 || d.gr < 0) return Bound::NonNegative;
  if (d.gl > demand.il) return Bound::DemandL;
  if (d.gr > demand.ir) return Bound::DemandR;
  if (d.gl > prev.capacity_l()) return Bound::Capacity0;
  if (d.gr > prev.capacity_r()) return Bound::Capacity1;
  if (d.gl + d.gr > prev.total()) return Bound::KCap;
  return std::nullopt;
}

bool is_feasible(const Allocation& prev, const StageDemand& demand, const StageDecision& d) {
  return !violated_bound(prev, demand, d).has_value();
}

Allocation transition(const Allocation& prev, const StageDecision& d) {
  const Count k = prev.total();
  // Demand is not part of the transition; treat it as unbounded.
  const StageDemand any{d.gl, d.gr};
  if (auto b = violated_bound(prev, any, d)) {
    throw FeasibilityError(*b, "decision (" + std::to_string(d.gl) + "," + std::to_string(d.gr) +
                                   ") violates " + std::string(bound_name(*b)));
  }
  return {d.gr, k - d.gl - d.gr, d.gl};
}

std::vector<StageDecision> feasible_decisions(const Allocation& prev, const StageDemand& demand) {
  const Count k = prev.total();
  const Count max_l = std::min(demand.il, prev.capacity_l());
  const Count cap_r = std::min(demand.ir, prev.capacity_r());
  std::vector<StageDecision> out;
  for (Count gl = 0; gl <= max_l; ++gl) {
    const Count max_r = std::min(cap_r, k - gl);
    for (Count gr = 0; gr <= max_r; ++gr) {
      out.push_back({gl, gr});
    }
  }
  return out;
}

Schedule::Schedule(Count k, std::vector<StageDecision> decisions)
    : k_(k), decisions_(std::move(decisions)) {
  for (std::size_t i = 0; i < decisions_.size(); ++i) {
    const auto& d = decisions_[i];
    if (d.gl < 0 || d.gr < 0) {
      throw FeasibilityError(Bound::NonNegative,
                             "negative count in stage " + std::to_string(i + 1));
    }
    if (d.gl + d.gr > k_) {
      throw FeasibilityError(Bound::KCap, "stage " + std::to_string(i + 1) +
                                              " serves more than k requests");
    }
  }
}

Count profit(const Schedule& s) {
  Count total = 0;
  for (const auto& d : s.decisions()) total += d.served();
  return total;
}

}  // namespace carshare
