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

// The five online schedulers.
//
// Stage policies see a whole stage's demand before deciding (S model):
//   gba    greedy balanced
//   prgba  gba with a randomized balanced split
//   agba   adaptive targets alpha/beta derived from the stage load
//
// Request policies accept or reject each request on arrival (F model):
//   argba    per-direction threshold 2k/3
//   prargba  argba with the fractional part of 2k/3 realized by a coin

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "carshare/coin.hpp"
#include "carshare/model.hpp"
#include "carshare/rational.hpp"

namespace carshare {

enum class PolicyId { Gba, Argba, Prgba, Prargba, Agba };

enum class Granularity { Stage, Request };

inline constexpr PolicyId kAllPolicies[] = {PolicyId::Gba, PolicyId::Argba, PolicyId::Prgba,
                                            PolicyId::Prargba, PolicyId::Agba};

std::string_view to_string(PolicyId id);
/// Accepts the lowercase CLI identifiers. Throws std::invalid_argument.
PolicyId parse_policy_id(std::string_view name);
bool is_randomized(PolicyId id);
Granularity granularity(PolicyId id);

/// Raised when a request policy is driven out of order.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Stage-granularity decisions. `alloc.total()` must equal k.

StageDecision gba_decide(const Allocation& alloc, const StageDemand& demand, Count k);
StageDecision prgba_decide(const Allocation& alloc, const StageDemand& demand, Count k,
                           CoinSource& coin);
/// Demand is capped at k per direction before the targets are computed.
StageDecision agba_decide(const Allocation& alloc, const StageDemand& demand, Count k,
                          CoinSource& coin);

/// Per-stage acceptance targets of the adaptive policy.
struct AlphaBeta {
  Rational alpha;
  Rational beta;
  /// (il + ir) / k
  Rational load;
};

/// For load >= 1: alpha = ((1 - load) k + 3 il) / (2 + load), beta mirrored.
/// Otherwise alpha = il, beta = ir. Requires 0 <= il, ir <= k.
AlphaBeta alpha_beta(Count il, Count ir, Count k);

class StagePolicy {
 public:
  virtual ~StagePolicy() = default;
  virtual PolicyId id() const = 0;
  virtual StageDecision decide(const Allocation& alloc, const StageDemand& demand,
                               CoinSource& coin) const = 0;
};

class GbaPolicy final : public StagePolicy {
 public:
  PolicyId id() const override { return PolicyId::Gba; }
  StageDecision decide(const Allocation& alloc, const StageDemand& demand,
                       CoinSource& coin) const override;
};

class PrgbaPolicy final : public StagePolicy {
 public:
  PolicyId id() const override { return PolicyId::Prgba; }
  StageDecision decide(const Allocation& alloc, const StageDemand& demand,
                       CoinSource& coin) const override;
};

class AgbaPolicy final : public StagePolicy {
 public:
  PolicyId id() const override { return PolicyId::Agba; }
  StageDecision decide(const Allocation& alloc, const StageDemand& demand,
                       CoinSource& coin) const override;
};

// ---------------------------------------------------------------------------
// Request granularity.

class RequestPolicy {
 public:
  virtual ~RequestPolicy() = default;
  virtual PolicyId id() const = 0;
  virtual void begin_stage(const Allocation& alloc, Count k) = 0;
  /// Immediate accept (true) or reject (false). Throws UsageError outside a stage.
  virtual bool step(Direction r, CoinSource& coin) = 0;
  /// Closes the stage and returns its tally.
  virtual StageDecision end_stage() = 0;
};

/// Accept-or-reject greedy balanced policy. A (0,1) request is accepted iff,
/// with `seen` the number of (0,1)'s that arrived before it in this stage,
///   seen < at0 + floating  and  seen < 2k/3  and  gl + gr < k
/// (mirrored for (1,0)). The randomized variant accepts the request at
/// seen = floor(2k/3) with probability 2k/3 - seen when 2k/3 is fractional.
class ArgbaPolicy final : public RequestPolicy {
 public:
  explicit ArgbaPolicy(bool randomized = false) : randomized_(randomized) {}

  PolicyId id() const override { return randomized_ ? PolicyId::Prargba : PolicyId::Argba; }
  void begin_stage(const Allocation& alloc, Count k) override;
  bool step(Direction r, CoinSource& coin) override;
  StageDecision end_stage() override;

  Count seen_l() const { return seen_l_; }
  Count seen_r() const { return seen_r_; }
  StageDecision tally() const { return tally_; }

 private:
  bool randomized_;
  std::optional<Allocation> alloc_;
  Count k_ = 0;
  Count seen_l_ = 0;
  Count seen_r_ = 0;
  StageDecision tally_;
};

// ---------------------------------------------------------------------------

/// One stage as a policy sees it. `seq` is set for request-ordered stages.
struct StageInput {
  StageDemand demand;
  std::optional<std::span<const Direction>> seq;
};

StageInput stage_input(const Instance& inst, std::size_t stage);

/// Owns one policy of either granularity and plays whole stages with it.
/// A request policy given a count-only stage sees it in L-then-R order; a
/// stage policy given an ordered stage sees its counts.
class Policy {
 public:
  static Policy make(PolicyId id);

  PolicyId id() const;
  bool randomized() const { return is_randomized(id()); }
  Granularity granularity() const { return carshare::granularity(id()); }

  /// Null when the policy has the other granularity.
  const StagePolicy* stage_policy() const;
  RequestPolicy* request_policy();

  StageDecision play(const Allocation& alloc, const StageInput& input, CoinSource& coin);

 private:
  using Impl = std::variant<std::unique_ptr<StagePolicy>, std::unique_ptr<RequestPolicy>>;
  explicit Policy(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

}  // namespace carshare
