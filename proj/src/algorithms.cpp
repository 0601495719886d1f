// Copyright 2026 The Pricing Lab Authors. All rights reserved.
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

#include "pricing_lab/algorithms.hpp"

#include <cstdio>
#include <memory>
#include <string>

#include "pricing_lab/errors.hpp"
#include "pricing_lab/numeric.hpp"

namespace plab {

namespace {

void require_phase(int l) {
  if (l < 0) throw PreconditionViolated("phase index must be >= 0");
  if (l > kMaxPhase) {
    throw Overflow("phase index " + std::to_string(l) + " exceeds the supported maximum " +
                   std::to_string(kMaxPhase));
  }
}

}  // namespace

PhaseParams exploration_params(int l) {
  require_phase(l);
  PhaseParams params;
  params.l = l;
  params.epsilon = Price::power_of_half(std::int64_t{1} << l);
  params.n = l == 0 ? 0 : std::int64_t{1} << (std::int64_t{1} << (l - 1));
  return params;
}

std::int64_t default_exploit_rate(int l) {
  require_phase(l);
  return std::int64_t{1} << (std::int64_t{1} << l);
}

std::int64_t preprrfes_exploit_rate(int l, double big_g) {
  if (!(big_g > 0.0)) throw PreconditionViolated("exploitation floor G must be positive");
  return std::max(default_exploit_rate(l), ceil_snapped(big_g));
}

ExploitRate ExploitRate::standard() { return ExploitRate{}; }

ExploitRate ExploitRate::with_floor(double big_g) {
  if (!(big_g > 0.0)) throw PreconditionViolated("exploitation floor G must be positive");
  char buf[48];
  std::snprintf(buf, sizeof(buf), "preprrfes:%.12g", big_g);
  return ExploitRate{buf, [big_g](int l) { return preprrfes_exploit_rate(l, big_g); }};
}

namespace {

enum Mode : std::int64_t { kExplore = 0, kPenalize = 1, kExploit = 2 };

// Shared control flow; `offer_carried` selects prePRRFES pricing.
class PrrfesImpl final : public PricingMachine::Impl {
 public:
  PrrfesImpl(PrrfesParams params, bool offer_carried)
      : params_(std::move(params)), offer_carried_(offer_carried) {
    if (params_.r < 1) throw PreconditionViolated("penalization length r must be >= 1");
    if (!params_.exploit.rate) throw PreconditionViolated("missing exploitation rate");
  }

  std::string name() const override { return offer_carried_ ? "preprrfes" : "prrfes"; }

  PricingState initial_state() const override {
    return make(Price(), Price::power_of_half(1), 0, kExplore, 0);
  }

  Price offer(const PricingState& s) const override {
    if (offer_carried_ || mode(s) == kExploit) return q(s);
    return p(s);
  }

  PricingState step(const PricingState& s, Decision d) const override {
    const int l = phase(s);
    switch (mode(s)) {
      case kExplore:
      case kPenalize: {
        if (d == Decision::kAccept) return after_accept(p(s), l);
        const std::int64_t left = mode(s) == kExplore ? params_.r - 1 : remaining(s) - 1;
        if (left > 0) return make(q(s), p(s), l, kPenalize, left);
        return make(q(s), p(s), l, kExploit, exploit_rounds(l));
      }
      case kExploit:
      default: {
        if (remaining(s) > 1) return make(q(s), p(s), l, kExploit, remaining(s) - 1);
        return next_phase(q(s), p(s), l);
      }
    }
  }

  std::optional<IdleRun> idle_run(const PricingState& s) const override {
    if (mode(s) != kExploit) return std::nullopt;
    return IdleRun{remaining(s), q(s), next_phase(q(s), p(s), phase(s))};
  }

  std::optional<PriceFloor> price_floor(const PricingState& s) const override {
    switch (mode(s)) {
      case kExplore:
        return PriceFloor{offer(s), p(s), params_.r, q(s)};
      case kPenalize:
        return PriceFloor{offer(s), p(s), remaining(s), q(s)};
      default:
        return PriceFloor{q(s), q(s), 1, q(s)};
    }
  }

  std::optional<Price> price_infimum() const override { return Price(); }

 private:
  static const Price& q(const PricingState& s) { return s.prices[0]; }
  static const Price& p(const PricingState& s) { return s.prices[1]; }
  static int phase(const PricingState& s) { return static_cast<int>(s.counters[0]); }
  static std::int64_t mode(const PricingState& s) { return s.counters[1]; }
  static std::int64_t remaining(const PricingState& s) { return s.counters[2]; }

  static PricingState make(Price q, Price p, int l, std::int64_t mode, std::int64_t remaining) {
    PricingState s;
    s.prices = {std::move(q), std::move(p)};
    s.counters = {l, mode, remaining};
    return s;
  }

  // The next exploration price after q; p stays put once q reaches 1.
  static Price advance(const Price& q, const Price& p, int l) {
    if (q < Price::integer(1)) return q + exploration_params(l).epsilon;
    return p;
  }

  static PricingState after_accept(const Price& accepted, int l) {
    return make(accepted, advance(accepted, accepted, l), l, kExplore, 0);
  }

  static PricingState next_phase(const Price& q, const Price& p, int l) {
    require_phase(l + 1);
    return make(q, advance(q, p, l + 1), l + 1, kExplore, 0);
  }

  std::int64_t exploit_rounds(int l) const {
    const std::int64_t g = params_.exploit.rate(l);
    if (g < 1) throw PreconditionViolated("exploitation rate must be >= 1");
    return g;
  }

  PrrfesParams params_;
  bool offer_carried_;
};

class BinarySearchImpl final : public PricingMachine::Impl {
 public:
  std::string name() const override { return "binary-search"; }
  PricingState initial_state() const override {
    PricingState s;
    s.prices = {Price(), Price::integer(1)};
    return s;
  }
  Price offer(const PricingState& s) const override { return (s.prices[0] + s.prices[1]).half(); }
  PricingState step(const PricingState& s, Decision d) const override {
    PricingState next = s;
    next.prices[d == Decision::kAccept ? 0 : 1] = offer(s);
    return next;
  }
  std::optional<PriceFloor> price_floor(const PricingState& s) const override {
    const Price mid = offer(s);
    return PriceFloor{mid, mid, 1, s.prices[0]};
  }
  std::optional<Price> price_infimum() const override { return Price(); }
};

}  // namespace

PricingMachine make_prrfes(const PrrfesParams& params) {
  return PricingMachine(std::make_shared<PrrfesImpl>(params, false));
}

PricingMachine make_preprrfes(const PrrfesParams& params) {
  return PricingMachine(std::make_shared<PrrfesImpl>(params, true));
}

PricingMachine make_binary_search() {
  return PricingMachine(std::make_shared<BinarySearchImpl>());
}

PricingMachine make_machine(const std::string& name, const PrrfesParams& params) {
  if (name == "prrfes") return make_prrfes(params);
  if (name == "preprrfes") return make_preprrfes(params);
  if (name == "binary-search") return make_binary_search();
  if (name.rfind("constant:", 0) == 0) return make_constant(Price::parse(name.substr(9)));
  if (name.rfind("pre:", 0) == 0) {
    const auto colon = name.find(':', 4);
    if (colon == std::string::npos) {
      throw PreconditionViolated("expected pre:<q>:<machine>, got '" + name + "'");
    }
    return pre_transform(Price::parse(name.substr(4, colon - 4)),
                         make_machine(name.substr(colon + 1), params));
  }
  throw PreconditionViolated("unknown pricing algorithm '" + name + "'");
}

}  // namespace plab
