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

#ifndef PRICING_LAB_PRICING_HPP
#define PRICING_LAB_PRICING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pricing_lab/dyadic.hpp"

namespace plab {

enum class Decision : std::uint8_t { kReject = 0, kAccept = 1 };

using DecisionPath = std::vector<Decision>;

/// "10100"-style serialization, accept = '1'.
std::string to_bits(const DecisionPath& path);
DecisionPath parse_bits(std::string_view bits);

/// Machine-specific payload. The state is its own fingerprint: equal states
/// offer the same price and have equal successors.
struct PricingState {
  std::vector<Price> prices;
  std::vector<std::int64_t> counters;

  friend bool operator==(const PricingState&, const PricingState&) = default;
  std::size_t hash() const;
};

struct PricingStateHash {
  std::size_t operator()(const PricingState& s) const { return s.hash(); }
};

/// A stretch of rounds whose decisions do not influence later pricing.
struct IdleRun {
  std::int64_t rounds = 0;
  Price price;
  PricingState after;
};

/// Lower bounds on future prices used to bound a buyer's surplus.
///
/// Along the all-reject continuation the next `forced` offers are at least
/// `offer`; once any of them is accepted every later price is at least
/// `accept`; after `forced` rejections every later price is at least `rest`.
struct PriceFloor {
  Price offer;
  Price accept;
  std::int64_t forced = 1;
  Price rest;
};

class PricingMachine {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual std::string name() const = 0;
    virtual PricingState initial_state() const = 0;
    virtual Price offer(const PricingState& state) const = 0;
    virtual PricingState step(const PricingState& state, Decision decision) const = 0;
    virtual std::optional<IdleRun> idle_run(const PricingState&) const { return std::nullopt; }
    virtual std::optional<PriceFloor> price_floor(const PricingState&) const {
      return std::nullopt;
    }
    virtual std::optional<Price> price_infimum() const { return std::nullopt; }
  };

  explicit PricingMachine(std::shared_ptr<const Impl> impl);

  std::string name() const { return impl_->name(); }
  PricingState initial_state() const { return impl_->initial_state(); }
  Price offer(const PricingState& state) const { return impl_->offer(state); }
  PricingState step(const PricingState& state, Decision decision) const {
    return impl_->step(state, decision);
  }
  std::optional<IdleRun> idle_run(const PricingState& state) const {
    return impl_->idle_run(state);
  }
  std::optional<PriceFloor> price_floor(const PricingState& state) const {
    return impl_->price_floor(state);
  }
  std::optional<Price> price_infimum() const { return impl_->price_infimum(); }

  /// State reached from the root along `path`.
  PricingState state_after(const DecisionPath& path) const;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Offered prices p_1..p_n along the decisions.
std::vector<Price> price_path(const PricingMachine& machine, const DecisionPath& path);

/// Offers the carried price (initially q); an accept replaces it with the
/// wrapped machine's current offer and moves that machine right, a reject
/// moves it left.
PricingMachine pre_transform(const Price& q, const PricingMachine& machine);

/// Always offers `price`.
PricingMachine make_constant(const Price& price);

/// Offers `labels(path)` at the node reached by `path`. No state sharing
/// between nodes; meant for small hand-built trees.
PricingMachine make_tree_machine(std::string name,
                                 std::function<Price(const DecisionPath&)> labels);

/// Outcome of a depth-bounded check. `holds` certifies only the explored
/// depth; a violation carries the path to the offending node.
struct CheckResult {
  bool holds = true;
  std::optional<DecisionPath> witness;
  int depth = 0;

  explicit operator bool() const { return holds; }
};

// Checkers explore nodes at depths 1..depth (paths of length < depth).
CheckResult check_right_consistent(const PricingMachine& machine, int depth);
CheckResult check_consistent(const PricingMachine& machine, int depth);
CheckResult check_weakly_consistent(const PricingMachine& machine, int depth);
/// Weak consistency plus the three regularity cases, with subtree
/// equivalence checked to `equiv_depth` levels.
CheckResult check_regular_weakly_consistent(const PricingMachine& machine, int depth,
                                            int equiv_depth);
CheckResult path_prices_nondecreasing(const PricingMachine& machine, int depth);

/// True iff both machines offer the same prices on every path reaching
/// depth <= `depth`.
CheckResult price_equivalent(const PricingMachine& a, const PricingMachine& b, int depth);
/// Same for two subtrees, given by their root states.
bool subtrees_equivalent(const PricingMachine& a, const PricingState& sa,
                         const PricingMachine& b, const PricingState& sb, int depth);

}  // namespace plab

#endif  // PRICING_LAB_PRICING_HPP
