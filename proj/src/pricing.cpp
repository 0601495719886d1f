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

#include "pricing_lab/pricing.hpp"

#include <unordered_map>
#include <utility>

#include "pricing_lab/errors.hpp"
#include "pricing_lab/numeric.hpp"

namespace plab {

namespace {

inline void hash_combine(std::size_t& seed, std::size_t value) { seed = hash_mix(seed, value); }

}  // namespace

std::string to_bits(const DecisionPath& path) {
  std::string bits;
  bits.reserve(path.size());
  for (Decision d : path) bits.push_back(d == Decision::kAccept ? '1' : '0');
  return bits;
}

DecisionPath parse_bits(std::string_view bits) {
  DecisionPath path;
  path.reserve(bits.size());
  for (char c : bits) {
    if (c == '1') {
      path.push_back(Decision::kAccept);
    } else if (c == '0') {
      path.push_back(Decision::kReject);
    } else {
      throw PreconditionViolated("decision bits must be 0 or 1, got '" + std::string(bits) + "'");
    }
  }
  return path;
}

std::size_t PricingState::hash() const {
  std::size_t seed = prices.size() * 31 + counters.size();
  for (const Price& p : prices) hash_combine(seed, p.hash());
  for (std::int64_t c : counters) hash_combine(seed, std::hash<std::int64_t>{}(c));
  return seed;
}

PricingMachine::PricingMachine(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw PreconditionViolated("null pricing machine");
}

PricingState PricingMachine::state_after(const DecisionPath& path) const {
  PricingState state = initial_state();
  for (Decision d : path) state = step(state, d);
  return state;
}

std::vector<Price> price_path(const PricingMachine& machine, const DecisionPath& path) {
  std::vector<Price> prices;
  prices.reserve(path.size());
  PricingState state = machine.initial_state();
  for (Decision d : path) {
    prices.push_back(machine.offer(state));
    state = machine.step(state, d);
  }
  return prices;
}

// ---------------------------------------------------------------------------
// Small machines.

namespace {

class ConstantImpl final : public PricingMachine::Impl {
 public:
  explicit ConstantImpl(Price price) : price_(std::move(price)) {}
  std::string name() const override { return "constant:" + price_.to_string(); }
  PricingState initial_state() const override { return {}; }
  Price offer(const PricingState&) const override { return price_; }
  PricingState step(const PricingState& s, Decision) const override { return s; }
  std::optional<PriceFloor> price_floor(const PricingState&) const override {
    return PriceFloor{price_, price_, 1, price_};
  }
  std::optional<Price> price_infimum() const override { return price_; }

 private:
  Price price_;
};

class TreeImpl final : public PricingMachine::Impl {
 public:
  TreeImpl(std::string name, std::function<Price(const DecisionPath&)> labels)
      : name_(std::move(name)), labels_(std::move(labels)) {}
  std::string name() const override { return name_; }
  PricingState initial_state() const override { return {}; }
  Price offer(const PricingState& s) const override { return labels_(decode(s)); }
  PricingState step(const PricingState& s, Decision d) const override {
    PricingState next = s;
    next.counters.push_back(static_cast<std::int64_t>(d));
    return next;
  }

 private:
  static DecisionPath decode(const PricingState& s) {
    DecisionPath path;
    path.reserve(s.counters.size());
    for (std::int64_t c : s.counters) path.push_back(static_cast<Decision>(c));
    return path;
  }

  std::string name_;
  std::function<Price(const DecisionPath&)> labels_;
};

// State layout: prices[0] is the carried price, the rest plus all counters
// belong to the wrapped machine.
class PreImpl final : public PricingMachine::Impl {
 public:
  PreImpl(Price q, PricingMachine inner) : q_(std::move(q)), inner_(std::move(inner)) {}

  std::string name() const override { return "pre:" + q_.to_string() + ":" + inner_.name(); }

  PricingState initial_state() const override { return wrap(q_, inner_.initial_state()); }

  Price offer(const PricingState& s) const override { return s.prices.front(); }

  PricingState step(const PricingState& s, Decision d) const override {
    PricingState inner = unwrap(s);
    if (d == Decision::kAccept) {
      Price carried = inner_.offer(inner);
      return wrap(std::move(carried), inner_.step(inner, d));
    }
    return wrap(s.prices.front(), inner_.step(inner, d));
  }

  std::optional<IdleRun> idle_run(const PricingState& s) const override {
    // Idle only when an accept would carry the same price forward.
    PricingState inner = unwrap(s);
    auto run = inner_.idle_run(inner);
    if (!run || run->price != s.prices.front()) return std::nullopt;
    return IdleRun{run->rounds, run->price, wrap(run->price, std::move(run->after))};
  }

  std::optional<PriceFloor> price_floor(const PricingState& s) const override {
    PricingState inner = unwrap(s);
    auto f = inner_.price_floor(inner);
    if (!f) return std::nullopt;
    const Price& carried = s.prices.front();
    PriceFloor out;
    out.offer = carried;
    out.accept = min(f->offer, f->accept);
    out.forced = 1;
    out.rest = f->forced > 1 ? min(min(carried, f->offer), min(f->accept, f->rest))
                             : min(carried, f->rest);
    return out;
  }

  std::optional<Price> price_infimum() const override {
    auto inner = inner_.price_infimum();
    if (!inner) return std::nullopt;
    return min(q_, *inner);
  }

 private:
  static PricingState wrap(Price carried, PricingState inner) {
    PricingState s;
    s.prices.reserve(inner.prices.size() + 1);
    s.prices.push_back(std::move(carried));
    for (Price& p : inner.prices) s.prices.push_back(std::move(p));
    s.counters = std::move(inner.counters);
    return s;
  }

  static PricingState unwrap(const PricingState& s) {
    PricingState inner;
    inner.prices.assign(s.prices.begin() + 1, s.prices.end());
    inner.counters = s.counters;
    return inner;
  }

  Price q_;
  PricingMachine inner_;
};

}  // namespace

PricingMachine pre_transform(const Price& q, const PricingMachine& machine) {
  if (auto inf = machine.price_infimum(); inf && *inf < q) {
    throw PreconditionViolated("pre seed " + q.to_string() + " exceeds the infimum " +
                               inf->to_string() + " of " + machine.name());
  }
  return PricingMachine(std::make_shared<PreImpl>(q, machine));
}

PricingMachine make_constant(const Price& price) {
  return PricingMachine(std::make_shared<ConstantImpl>(price));
}

PricingMachine make_tree_machine(std::string name,
                                 std::function<Price(const DecisionPath&)> labels) {
  return PricingMachine(std::make_shared<TreeImpl>(std::move(name), std::move(labels)));
}

// ---------------------------------------------------------------------------
// Consistency checkers.

namespace {

enum class Clauses { kRight, kBoth, kWeak };

struct BoundSearch {
  const PricingMachine& machine;
  int depth;
  Clauses clauses;
  DecisionPath path;
  std::optional<DecisionPath> witness;

  // lo / hi are the tightest bounds imposed by ancestors.
  bool visit(const PricingState& state, const Price& price, const std::optional<Price>& lo,
             const std::optional<Price>& hi) {
    if ((lo && price < *lo) || (hi && price > *hi)) {
      witness = path;
      return false;
    }
    if (static_cast<int>(path.size()) + 1 >= depth) return true;
    for (Decision d : {Decision::kReject, Decision::kAccept}) {
      PricingState child = machine.step(state, d);
      Price child_price = machine.offer(child);
      std::optional<Price> child_lo = lo;
      std::optional<Price> child_hi = hi;
      const bool differs = child_price != price;
      if (d == Decision::kAccept) {
        if (clauses != Clauses::kWeak || differs) child_lo = lo ? max(*lo, price) : price;
      } else {
        if (clauses == Clauses::kBoth || (clauses == Clauses::kWeak && differs)) {
          child_hi = hi ? min(*hi, price) : price;
        }
      }
      path.push_back(d);
      const bool ok = visit(child, child_price, child_lo, child_hi);
      path.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

CheckResult run_bound_search(const PricingMachine& machine, int depth, Clauses clauses) {
  if (depth < 1) throw PreconditionViolated("check depth must be >= 1");
  BoundSearch search{machine, depth, clauses, {}, std::nullopt};
  PricingState root = machine.initial_state();
  Price root_price = machine.offer(root);
  CheckResult result;
  result.depth = depth;
  result.holds = search.visit(root, root_price, std::nullopt, std::nullopt);
  result.witness = std::move(search.witness);
  return result;
}

struct PairHash {
  std::size_t operator()(const std::pair<PricingState, PricingState>& p) const {
    std::size_t seed = p.first.hash();
    hash_combine(seed, p.second.hash());
    return seed;
  }
};

class EquivalenceSearch {
 public:
  EquivalenceSearch(const PricingMachine& a, const PricingMachine& b) : a_(a), b_(b) {}

  bool equal(const PricingState& sa, const PricingState& sb, int levels, DecisionPath* path) {
    if (levels <= 0) return true;
    auto key = std::make_pair(sa, sb);
    if (auto it = done_.find(key); it != done_.end() && it->second >= levels) return true;
    if (a_.offer(sa) != b_.offer(sb)) return false;
    if (levels > 1) {
      for (Decision d : {Decision::kReject, Decision::kAccept}) {
        if (path) path->push_back(d);
        if (!equal(a_.step(sa, d), b_.step(sb, d), levels - 1, path)) return false;
        if (path) path->pop_back();
      }
    }
    int& best = done_[std::move(key)];
    best = std::max(best, levels);
    return true;
  }

 private:
  const PricingMachine& a_;
  const PricingMachine& b_;
  std::unordered_map<std::pair<PricingState, PricingState>, int, PairHash> done_;
};

// True iff every node of the subtree rooted at `state` (which sits at
// `node_depth`) down to `depth` offers `price`.
bool subtree_constant(const PricingMachine& machine, const PricingState& state, int node_depth,
                      int depth, const Price& price) {
  if (node_depth > depth) return true;
  if (machine.offer(state) != price) return false;
  return subtree_constant(machine, machine.step(state, Decision::kReject), node_depth + 1, depth,
                          price) &&
         subtree_constant(machine, machine.step(state, Decision::kAccept), node_depth + 1, depth,
                          price);
}

struct RegularitySearch {
  const PricingMachine& machine;
  int depth;
  int equiv_depth;
  EquivalenceSearch equivalence;
  DecisionPath path;

  bool equivalent(const PricingState& x, const PricingState& y) {
    return equivalence.equal(x, y, equiv_depth, nullptr);
  }

  bool visit(const PricingState& n) {
    const int n_depth = static_cast<int>(path.size()) + 1;
    if (n_depth + 1 > depth) return true;  // Children not explored.
    const Price p = machine.offer(n);
    const PricingState l = machine.step(n, Decision::kReject);
    const PricingState r = machine.step(n, Decision::kAccept);
    const Price pl = machine.offer(l);
    const Price pr = machine.offer(r);
    bool ok = true;
    if (pl == p && pr == p) {
      ok = (subtree_constant(machine, machine.step(l, Decision::kAccept), n_depth + 2, depth, p) &&
            subtree_constant(machine, machine.step(r, Decision::kReject), n_depth + 2, depth, p)) ||
           equivalent(l, r);
    } else if (pl == p) {
      const PricingState rl = machine.step(l, Decision::kAccept);
      ok = subtree_constant(machine, rl, n_depth + 2, depth, p) || equivalent(rl, r);
    } else if (pr == p) {
      const PricingState lr = machine.step(r, Decision::kReject);
      ok = subtree_constant(machine, lr, n_depth + 2, depth, p) || equivalent(lr, l);
    }
    if (!ok) return false;
    path.push_back(Decision::kReject);
    if (!visit(l)) return false;
    path.back() = Decision::kAccept;
    if (!visit(r)) return false;
    path.pop_back();
    return true;
  }
};

}  // namespace

CheckResult check_right_consistent(const PricingMachine& machine, int depth) {
  return run_bound_search(machine, depth, Clauses::kRight);
}

CheckResult check_consistent(const PricingMachine& machine, int depth) {
  return run_bound_search(machine, depth, Clauses::kBoth);
}

CheckResult check_weakly_consistent(const PricingMachine& machine, int depth) {
  return run_bound_search(machine, depth, Clauses::kWeak);
}

CheckResult check_regular_weakly_consistent(const PricingMachine& machine, int depth,
                                            int equiv_depth) {
  if (equiv_depth < 1 || equiv_depth > depth) {
    throw PreconditionViolated("equivalence depth must lie in [1, depth]");
  }
  CheckResult weak = check_weakly_consistent(machine, depth);
  if (!weak.holds) return weak;
  RegularitySearch search{machine, depth, equiv_depth, EquivalenceSearch(machine, machine), {}};
  CheckResult result;
  result.depth = depth;
  result.holds = search.visit(machine.initial_state());
  if (!result.holds) result.witness = search.path;
  return result;
}

CheckResult path_prices_nondecreasing(const PricingMachine& machine, int depth) {
  if (depth < 1) throw PreconditionViolated("check depth must be >= 1");
  // Nondecreasing along every path is the same as nondecreasing on every edge.
  std::unordered_map<PricingState, int, PricingStateHash> verified;
  DecisionPath path;
  std::function<bool(const PricingState&, int)> visit = [&](const PricingState& s, int levels) {
    if (levels <= 1) return true;
    if (auto it = verified.find(s); it != verified.end() && it->second >= levels) return true;
    const Price p = machine.offer(s);
    for (Decision d : {Decision::kReject, Decision::kAccept}) {
      PricingState child = machine.step(s, d);
      path.push_back(d);
      if (machine.offer(child) < p || !visit(child, levels - 1)) return false;
      path.pop_back();
    }
    int& best = verified[s];
    best = std::max(best, levels);
    return true;
  };
  CheckResult result;
  result.depth = depth;
  result.holds = visit(machine.initial_state(), depth);
  if (!result.holds) result.witness = path;
  return result;
}

CheckResult price_equivalent(const PricingMachine& a, const PricingMachine& b, int depth) {
  if (depth < 1) throw PreconditionViolated("check depth must be >= 1");
  EquivalenceSearch search(a, b);
  DecisionPath path;
  CheckResult result;
  result.depth = depth;
  result.holds = search.equal(a.initial_state(), b.initial_state(), depth, &path);
  if (!result.holds) result.witness = path;
  return result;
}

bool subtrees_equivalent(const PricingMachine& a, const PricingState& sa, const PricingMachine& b,
                         const PricingState& sb, int depth) {
  EquivalenceSearch search(a, b);
  return search.equal(sa, sb, depth, nullptr);
}

}  // namespace plab
