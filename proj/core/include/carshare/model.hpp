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

// Two locations (0 and 1), k interchangeable servers, discrete stages and
// unit profit per served request. A stage's (0,1) requests leave from
// location 0, its (1,0) requests from location 1.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace carshare {

using Count = std::int64_t;

/// L: a (0,1) request picked up at 0. R: a (1,0) request picked up at 1.
enum class Direction : char { L = 'L', R = 'R' };

enum class Model : char { S = 'S', F = 'F' };

struct StageDemand {
  Count il = 0;
  Count ir = 0;

  auto operator<=>(const StageDemand&) const = default;
};

using RequestSeq = std::vector<Direction>;

/// Counts the directions of an ordered stage.
StageDemand project(std::span<const Direction> seq);

/// L^il followed by R^ir.
RequestSeq l_then_r(const StageDemand& d);
/// R^ir followed by L^il.
RequestSeq r_then_l(const StageDemand& d);

/// Raised by constructors and parsers on values that break a model invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// k servers plus per-stage demand counts (S model) or ordered request
/// streams (F model). An F instance always carries its count projection too.
class Instance {
 public:
  static Instance stage_model(Count k, std::vector<StageDemand> stages);
  static Instance request_model(Count k, std::vector<RequestSeq> streams);

  Count k() const { return k_; }
  Model model() const { return model_; }
  std::size_t num_stages() const { return demands_.size(); }

  const std::vector<StageDemand>& demands() const { return demands_; }
  const StageDemand& demand(std::size_t stage) const { return demands_.at(stage); }

  /// Only meaningful for F instances; empty for S instances.
  const std::vector<RequestSeq>& streams() const { return streams_; }

  /// Same demands, S model.
  Instance as_stage_model() const;

  bool operator==(const Instance&) const = default;

 private:
  Instance() = default;

  Count k_ = 2;
  Model model_ = Model::S;
  std::vector<StageDemand> demands_;
  std::vector<RequestSeq> streams_;
};

/// Server availability at a stage boundary, written [at0, floating, at1].
/// Floating servers were idle last stage and can be moved to either side.
struct Allocation {
  Count at0 = 0;
  Count floating = 0;
  Count at1 = 0;

  static Allocation initial(Count k) { return {0, k, 0}; }

  Count total() const { return at0 + floating + at1; }
  /// Servers usable for (0,1) requests.
  Count capacity_l() const { return at0 + floating; }
  /// Servers usable for (1,0) requests.
  Count capacity_r() const { return at1 + floating; }

  auto operator<=>(const Allocation&) const = default;
};

struct StageDecision {
  Count gl = 0;
  Count gr = 0;

  Count served() const { return gl + gr; }

  auto operator<=>(const StageDecision&) const = default;
};

/// Names of the bounds a stage decision must respect.
enum class Bound {
  NonNegative,  // gl, gr >= 0
  DemandL,      // gl <= il
  DemandR,      // gr <= ir
  Capacity0,    // gl <= at0 + floating
  Capacity1,    // gr <= at1 + floating
  KCap,         // gl + gr <= k
};

std::string_view bound_name(Bound b);

class FeasibilityError : public std::invalid_argument {
 public:
  FeasibilityError(Bound bound, const std::string& what)
      : std::invalid_argument(what), bound_(bound) {}
  Bound bound() const { return bound_; }

 private:
  Bound bound_;
};

/// First violated bound, checked in the order of the Bound enum.
std::optional<Bound> violated_bound(const Allocation& prev, const StageDemand& demand,
                                    const StageDecision& d);

bool is_feasible(const Allocation& prev, const StageDemand& demand, const StageDecision& d);

/// Allocation after serving d from prev: [d.gr, k - d.gl - d.gr, d.gl].
/// Throws FeasibilityError when d exceeds prev's capacity.
Allocation transition(const Allocation& prev, const StageDecision& d);

/// Every feasible decision for one stage, ordered by (gl, gr) ascending.
std::vector<StageDecision> feasible_decisions(const Allocation& prev, const StageDemand& demand);

/// Per-stage decisions for k servers. Each decision satisfies gl, gr >= 0 and
/// gl + gr <= k on construction; demand and capacity are checked by
/// validate_schedule in the oracle.
class Schedule {
 public:
  Schedule(Count k, std::vector<StageDecision> decisions);

  Count k() const { return k_; }
  const std::vector<StageDecision>& decisions() const { return decisions_; }
  std::size_t size() const { return decisions_.size(); }

  bool operator==(const Schedule&) const = default;

 private:
  Count k_;
  std::vector<StageDecision> decisions_;
};

Count profit(const Schedule& s);

}  // namespace carshare
