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

#include "carshare/policies.hpp"

#include <algorithm>

namespace carshare {

std::string_view to_string(PolicyId id) {
  switch (id) {
    case PolicyId::Gba: return "gba";
    case PolicyId::Argba: return "argba";
    case PolicyId::Prgba: return "prgba";
    case PolicyId::Prargba: return "prargba";
    case PolicyId::Agba: return "agba";
  }
  return "unknown";
}

PolicyId parse_policy_id(std::string_view name) {
  for (PolicyId id : kAllPolicies) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown policy id '" + std::string(name) +
                              "' (expected gba, argba, prgba, prargba or agba)");
}

bool is_randomized(PolicyId id) {
  return id == PolicyId::Prgba || id == PolicyId::Prargba || id == PolicyId::Agba;
}

Granularity granularity(PolicyId id) {
  return (id == PolicyId::Argba || id == PolicyId::Prargba) ? Granularity::Request
                                                              : Granularity::Stage;
}

namespace {

void check_alloc(const Allocation& alloc, Count k) {
  if (alloc.at0 < 0 || alloc.floating < 0 || alloc.at1 < 0 || alloc.total() != k) {
    throw std::invalid_argument("allocation does not describe k = " + std::to_string(k) +
                                " servers");
  }
}

// Greedy branches shared by gba and prgba; nullopt selects the balanced split.
std::optional<StageDecision> greedy_balanced(const Allocation& alloc, const StageDemand& demand,
                                             Count k) {
  check_alloc(alloc, k);
  const Count half = k / 2;
  if (alloc.capacity_l() <= half || demand.il <= half) {
    const Count gl = std::min(demand.il, alloc.capacity_l());
    const Count gr = std::min({demand.ir, alloc.capacity_r(), k - gl});
    return StageDecision{gl, gr};
  }
  if (alloc.capacity_r() <= half || demand.ir <= half) {
    const Count gr = std::min(demand.ir, alloc.capacity_r());
    const Count gl = std::min({demand.il, alloc.capacity_l(), k - gr});
    return StageDecision{gl, gr};
  }
  return std::nullopt;
}

}  // namespace

StageDecision gba_decide(const Allocation& alloc, const StageDemand& demand, Count k) {
  if (auto d = greedy_balanced(alloc, demand, k)) return *d;
  const Count gr = k / 2;
  return {k - gr, gr};
}

StageDecision prgba_decide(const Allocation& alloc, const StageDemand& demand, Count k,
                           CoinSource& coin) {
  if (auto d = greedy_balanced(alloc, demand, k)) return *d;
  const Count gr = prrd(Rational(k, 2), coin);
  return {k - gr, gr};
}

AlphaBeta alpha_beta(Count il, Count ir, Count k) {
  if (il < 0 || ir < 0 || il > k || ir > k) {
    throw std::invalid_argument("alpha_beta needs 0 <= il, ir <= k");
  }
  AlphaBeta ab;
  ab.load = Rational(il + ir, k);
  if (ab.load >= 1) {
    const Rational base = (1 - ab.load) * k;
    const Rational denom = 2 + ab.load;
    ab.alpha = (base + 3 * il) / denom;
    ab.beta = (base + 3 * ir) / denom;
  } else {
    ab.alpha = il;
    ab.beta = ir;
  }
  return ab;
}

StageDecision agba_decide(const Allocation& alloc, const StageDemand& demand, Count k,
                          CoinSource& coin) {
  check_alloc(alloc, k);
  const Count il = std::min(demand.il, k);
  const Count ir = std::min(demand.ir, k);
  const AlphaBeta ab = alpha_beta(il, ir, k);

  if (Rational(alloc.capacity_l()) < ab.alpha) {
    // Floating servers all went to location 0; (1,0)'s only get at1.
    return {alloc.capacity_l(), std::min(ir, alloc.at1)};
  }
  if (Rational(alloc.capacity_r()) < ab.beta) {
    return {std::min(il, alloc.at0), alloc.capacity_r()};
  }
  const Count gl = prrd(ab.alpha, coin);
  // Equals k - gl whenever the load is at least 1; below that the targets are
  // the demands themselves and k - gl would exceed ir.
  return {gl, std::min(ir, k - gl)};
}

StageDecision GbaPolicy::decide(const Allocation& alloc, const StageDemand& demand,
                                CoinSource&) const {
  return gba_decide(alloc, demand, alloc.total());
}

StageDecision PrgbaPolicy::decide(const Allocation& alloc, const StageDemand& demand,
                                  CoinSource& coin) const {
  return prgba_decide(alloc, demand, alloc.total(), coin);
}

StageDecision AgbaPolicy::decide(const Allocation& alloc, const StageDemand& demand,
                                 CoinSource& coin) const {
  return agba_decide(alloc, demand, alloc.total(), coin);
}

void ArgbaPolicy::begin_stage(const Allocation& alloc, Count k) {
  check_alloc(alloc, k);
  alloc_ = alloc;
  k_ = k;
  seen_l_ = 0;
  seen_r_ = 0;
  tally_ = {};
}

bool ArgbaPolicy::step(Direction r, CoinSource& coin) {
  if (!alloc_) {
    throw UsageError("step called outside a stage; call begin_stage first");
  }
  const bool is_l = r == Direction::L;
  Count& seen = is_l ? seen_l_ : seen_r_;
  const Count capacity = is_l ? alloc_->capacity_l() : alloc_->capacity_r();
  // seen < 2k/3  <=>  3 seen < 2k
  bool accept = seen < capacity && 3 * seen < 2 * k_ && tally_.served() < k_;
  if (accept && randomized_) {
    const Rational slack = Rational(2 * k_, 3) - seen;
    if (slack < 1) {
      accept = prrd(slack, coin) == 1;
    }
  }
  ++seen;
  if (accept) {
    (is_l ? tally_.gl : tally_.gr) += 1;
  }
  return accept;
}

StageDecision ArgbaPolicy::end_stage() {
  if (!alloc_) {
    throw UsageError("end_stage called outside a stage");
  }
  alloc_.reset();
  return tally_;
}

StageInput stage_input(const Instance& inst, std::size_t stage) {
  StageInput in{inst.demand(stage), std::nullopt};
  if (inst.model() == Model::F) {
    in.seq = std::span<const Direction>(inst.streams().at(stage));
  }
  return in;
}

Policy Policy::make(PolicyId id) {
  switch (id) {
    case PolicyId::Gba: return Policy(std::make_unique<GbaPolicy>());
    case PolicyId::Prgba: return Policy(std::make_unique<PrgbaPolicy>());
    case PolicyId::Agba: return Policy(std::make_unique<AgbaPolicy>());
    case PolicyId::Argba: return Policy(std::make_unique<ArgbaPolicy>(false));
    case PolicyId::Prargba: return Policy(std::make_unique<ArgbaPolicy>(true));
  }
  throw std::invalid_argument("unknown policy id");
}

PolicyId Policy::id() const {
  return std::visit([](const auto& p) { return p->id(); }, impl_);
}

const StagePolicy* Policy::stage_policy() const {
  const auto* p = std::get_if<std::unique_ptr<StagePolicy>>(&impl_);
  return p ? p->get() : nullptr;
}

RequestPolicy* Policy::request_policy() {
  auto* p = std::get_if<std::unique_ptr<RequestPolicy>>(&impl_);
  return p ? p->get() : nullptr;
}

StageDecision Policy::play(const Allocation& alloc, const StageInput& input, CoinSource& coin) {
  if (const StagePolicy* sp = stage_policy()) {
    return sp->decide(alloc, input.demand, coin);
  }
  RequestPolicy& rp = *request_policy();
  rp.begin_stage(alloc, alloc.total());
  if (input.seq) {
    for (Direction r : *input.seq) rp.step(r, coin);
  } else {
    for (Direction r : l_then_r(input.demand)) rp.step(r, coin);
  }
  return rp.end_stage();
}

}  // namespace carshare
