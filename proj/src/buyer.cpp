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

#include "pricing_lab/buyer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <utility>

#include "pricing_lab/errors.hpp"
#include "pricing_lab/numeric.hpp"

namespace plab {

std::string to_string(TieBreak tie_break) {
  switch (tie_break) {
    case TieBreak::kMaxRegret:
      return "max-regret";
    case TieBreak::kPreferReject:
      return "prefer-reject";
    case TieBreak::kPreferAccept:
      return "prefer-accept";
  }
  return "unknown";
}

TieBreak parse_tie_break(const std::string& text) {
  if (text == "max-regret") return TieBreak::kMaxRegret;
  if (text == "prefer-reject") return TieBreak::kPreferReject;
  if (text == "prefer-accept") return TieBreak::kPreferAccept;
  throw PreconditionViolated("unknown tie-break '" + text + "'");
}

double surplus_of(const PlayRecord& play, const DiscountSequence& discount) {
  double total = 0.0;
  for (std::size_t i = 0; i < play.decisions.size(); ++i) {
    if (play.decisions[i] != Decision::kAccept) continue;
    const auto t = play.first_round + static_cast<std::int64_t>(i);
    total += discount.gamma_at(t) * (play.v - play.prices[i].to_double());
  }
  return total;
}

PlayRecord truthful_play(const PricingMachine& machine, double v, std::int64_t horizon) {
  if (horizon < 1) throw PreconditionViolated("horizon must be >= 1");
  PlayRecord play;
  play.v = v;
  play.horizon = horizon;
  play.prices.reserve(horizon);
  play.decisions.reserve(horizon);
  PricingState state = machine.initial_state();
  for (std::int64_t t = 1; t <= horizon; ++t) {
    Price price = machine.offer(state);
    const Decision d = price.to_double() <= v ? Decision::kAccept : Decision::kReject;
    play.prices.push_back(std::move(price));
    play.decisions.push_back(d);
    if (t < horizon) state = machine.step(state, d);
  }
  return play;
}

bool is_locally_non_losing(const PlayRecord& play) {
  for (std::size_t i = 0; i < play.decisions.size(); ++i) {
    if (play.decisions[i] == Decision::kAccept && play.prices[i].to_double() > play.v) {
      return false;
    }
  }
  return true;
}

namespace {

// Discount weights over rounds [first, last] seen from a base round. Values
// are kept relative to gamma_base so long geometric horizons do not underflow.
class DiscountWindow {
 public:
  DiscountWindow(const DiscountSequence& seq, std::int64_t first, std::int64_t last)
      : geometric_(seq.is_geometric()), first_(first), last_(last) {
    if (geometric_) {
      rate_ = seq.rate();
      return;
    }
    weights_.resize(static_cast<std::size_t>(last - first + 2));
    suffix_.assign(weights_.size() + 1, 0.0);
    for (std::int64_t t = first; t <= last + 1; ++t) weights_[index(t)] = seq.gamma_at(t);
    for (std::int64_t t = last; t >= first; --t) {
      suffix_[index(t)] = suffix_[index(t + 1)] + weights_[index(t)];
    }
  }

  /// True when gamma_{t+1} / gamma_t does not depend on t.
  bool stationary() const { return geometric_; }

  /// gamma_{t+1} / gamma_t.
  double rho(std::int64_t t) const {
    return geometric_ ? rate_ : weights_[index(t + 1)] / weights_[index(t)];
  }

  /// gamma_a / gamma_base.
  double ratio(std::int64_t a, std::int64_t base) const {
    if (geometric_) return std::pow(rate_, static_cast<double>(a - base));
    return weights_[index(a)] / weights_[index(base)];
  }

  /// sum_{u=from}^{last} gamma_u / gamma_base.
  double scaled_sum(std::int64_t from, std::int64_t base) const {
    if (from > last_) return 0.0;
    if (geometric_) {
      return std::pow(rate_, static_cast<double>(from - base)) *
             (1.0 - std::pow(rate_, static_cast<double>(last_ - from + 1))) / (1.0 - rate_);
    }
    return suffix_[index(from)] / weights_[index(base)];
  }

 private:
  std::size_t index(std::int64_t t) const { return static_cast<std::size_t>(t - first_); }

  bool geometric_;
  double rate_ = 0.0;
  std::int64_t first_;
  std::int64_t last_;
  std::vector<double> weights_;
  std::vector<double> suffix_;
};

// Scaled surplus W_t = S_t / gamma_t and the undiscounted seller regret of
// the chosen continuation.
struct Value {
  double w = 0.0;
  double regret = 0.0;
};

struct Choice {
  Value value;
  Decision decision;
};

// Both oracles go through this one comparison so their results agree bit
// for bit.
Choice choose(const Value& accept, const Value& reject, const OracleOptions& options) {
  const double diff = accept.w - reject.w;
  if (diff > options.tie_window) return {accept, Decision::kAccept};
  if (-diff > options.tie_window) return {reject, Decision::kReject};
  switch (options.tie_break) {
    case TieBreak::kPreferAccept:
      return {accept, Decision::kAccept};
    case TieBreak::kPreferReject:
      return {reject, Decision::kReject};
    case TieBreak::kMaxRegret:
    default:
      if (accept.regret > reject.regret) return {accept, Decision::kAccept};
      return {reject, Decision::kReject};
  }
}

Choice combine(double v, double price, double rho, const Value& right, const Value& left,
               const OracleOptions& options) {
  const Value accept{(v - price) + rho * right.w, (v - price) + right.regret};
  const Value reject{rho * left.w, v + left.regret};
  return choose(accept, reject, options);
}

void check_inputs(double v, std::int64_t horizon, std::int64_t first_round) {
  if (!(v >= 0.0 && v <= 1.0)) throw PreconditionViolated("valuation must lie in [0, 1]");
  if (horizon < 1) throw PreconditionViolated("horizon must be >= 1");
  if (first_round < 1 || first_round > horizon) {
    throw PreconditionViolated("subgame round must lie in [1, T]");
  }
}

OptimalPlay finish(const PlayRecord& play, const DiscountSequence& discount, double w,
                   double regret, std::size_t nodes) {
  OptimalPlay out;
  out.play = play;
  out.surplus = discount.gamma_at(play.first_round) * w;
  out.seller_regret = regret;
  out.node_count = nodes;
  return out;
}

class BruteForce {
 public:
  BruteForce(const PricingMachine& machine, double v, const DiscountWindow& window,
             std::int64_t horizon, const OracleOptions& options)
      : machine_(machine), v_(v), window_(window), horizon_(horizon), options_(options) {}

  Value solve(const PricingState& s, std::int64_t t) {
    if (t > horizon_) return {};
    ++nodes_;
    const double price = machine_.offer(s).to_double();
    const Value right = solve(machine_.step(s, Decision::kAccept), t + 1);
    const Value left = solve(machine_.step(s, Decision::kReject), t + 1);
    return combine(v_, price, window_.rho(t), right, left, options_).value;
  }

  Decision decide(const PricingState& s, std::int64_t t) {
    const double price = machine_.offer(s).to_double();
    const Value right = solve(machine_.step(s, Decision::kAccept), t + 1);
    const Value left = solve(machine_.step(s, Decision::kReject), t + 1);
    return combine(v_, price, window_.rho(t), right, left, options_).decision;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  const PricingMachine& machine_;
  double v_;
  const DiscountWindow& window_;
  std::int64_t horizon_;
  const OracleOptions& options_;
  std::size_t nodes_ = 0;
};

// A machine state seen by the memoized oracle, with its transitions and
// floor data computed once.
struct StateNode {
  PricingState state;
  double price = 0.0;
  std::int32_t accept = -1;
  std::int32_t reject = -1;
  bool idle = false;
  std::int64_t idle_rounds = 0;
  double idle_price = 0.0;
  std::int32_t idle_after = -1;
  bool has_floor = false;
  double offer_gain = 0.0;
  double accept_gain = 0.0;
  double rest_gain = 0.0;
  std::int64_t forced = 0;
  // Earliest round at which this state was solved, and W there.
  std::int64_t earliest_t = std::numeric_limits<std::int64_t>::max();
  double earliest_w = 0.0;
};

struct MemoEntry {
  Value value;
  Decision decision = Decision::kReject;
};

class Memoized {
 public:
  Memoized(const PricingMachine& machine, double v, const DiscountWindow& window,
           std::int64_t horizon, const OracleOptions& options)
      : machine_(machine), v_(v), window_(window), horizon_(horizon), options_(options) {}

  std::int32_t intern(const PricingState& s) {
    auto [it, inserted] = ids_.try_emplace(s, static_cast<std::int32_t>(nodes_.size()));
    if (!inserted) return it->second;
    const std::int32_t id = it->second;
    StateNode node;
    node.state = s;
    if (auto run = machine_.idle_run(s)) {
      node.idle = true;
      node.idle_rounds = run->rounds;
      node.idle_price = run->price.to_double();
      nodes_.push_back(std::move(node));
      const std::int32_t after = intern(run->after);
      nodes_[static_cast<std::size_t>(id)].idle_after = after;
    } else {
      node.price = machine_.offer(s).to_double();
      nodes_.push_back(std::move(node));
    }
    StateNode& stored = nodes_[static_cast<std::size_t>(id)];
    if (auto floor = machine_.price_floor(s)) {
      stored.has_floor = true;
      stored.offer_gain = std::max(0.0, v_ - floor->offer.to_double());
      stored.accept_gain = std::max(0.0, v_ - floor->accept.to_double());
      stored.rest_gain = std::max(0.0, v_ - floor->rest.to_double());
      stored.forced = floor->forced;
    }
    return id;
  }

  Value solve(std::int32_t id, std::int64_t t) {
    if (t > horizon_) return {};
    if (auto it = memo_.find(key(id, t)); it != memo_.end()) return it->second.value;

    if (node(id).idle) {
      const std::int64_t rounds = std::min(node(id).idle_rounds, horizon_ - t + 1);
      const Value tail = solve(node(id).idle_after, t + rounds);
      const Value value = replay_idle(node(id).idle_price, t, rounds, tail, nullptr);
      store(id, t, {value, Decision::kReject});
      return value;
    }

    const double price = node(id).price;
    const double rho = window_.rho(t);
    const std::int32_t right = child(id, Decision::kAccept);
    const std::int32_t left = child(id, Decision::kReject);
    const bool accept_first =
        (v_ - price) + rho * upper_bound(right, t + 1) >= rho * upper_bound(left, t + 1);

    // The other child is bounded again once the first is solved, since the
    // memo may by then know its accept successor; it is skipped when that
    // bound falls strictly short of the solved child's value.
    Value right_value;
    Value left_value;
    Choice choice;
    if (accept_first) {
      right_value = solve(right, t + 1);
      const double accept_total = (v_ - price) + rho * right_value.w;
      if (clearly_below(rho * chain_bound(left, t + 1), accept_total)) {
        choice = {{accept_total, (v_ - price) + right_value.regret}, Decision::kAccept};
      } else {
        left_value = solve(left, t + 1);
        choice = combine(v_, price, rho, right_value, left_value, options_);
      }
    } else {
      left_value = solve(left, t + 1);
      const double reject_total = rho * left_value.w;
      if (clearly_below((v_ - price) + rho * chain_bound(right, t + 1), reject_total)) {
        choice = {{reject_total, v_ + left_value.regret}, Decision::kReject};
      } else {
        right_value = solve(right, t + 1);
        choice = combine(v_, price, rho, right_value, left_value, options_);
      }
    }
    store(id, t, {choice.value, choice.decision});
    return choice.value;
  }

  PlayRecord extract(std::int32_t id, std::int64_t t, PlayRecord play) {
    while (t <= horizon_) {
      const StateNode& n = node(id);
      if (n.idle) {
        const std::int64_t rounds = std::min(n.idle_rounds, horizon_ - t + 1);
        const Value tail = solve(n.idle_after, t + rounds);
        std::vector<Decision> decisions(static_cast<std::size_t>(rounds));
        replay_idle(n.idle_price, t, rounds, tail, &decisions);
        const Price price = machine_.offer(node(id).state);
        for (Decision d : decisions) {
          play.prices.push_back(price);
          play.decisions.push_back(d);
        }
        t += rounds;
        id = node(id).idle_after;
        continue;
      }
      const Decision d = memo_.at(key(id, t)).decision;
      play.prices.push_back(machine_.offer(n.state));
      play.decisions.push_back(d);
      id = child(id, d);
      ++t;
    }
    return play;
  }

  std::size_t nodes() const { return memo_.size(); }

 private:
  static std::uint64_t key(std::int32_t id, std::int64_t t) {
    return (static_cast<std::uint64_t>(id) << 32) | static_cast<std::uint32_t>(t);
  }

  const StateNode& node(std::int32_t id) const { return nodes_[static_cast<std::size_t>(id)]; }

  std::int32_t child(std::int32_t id, Decision d) {
    std::int32_t cached = d == Decision::kAccept ? node(id).accept : node(id).reject;
    if (cached >= 0) return cached;
    cached = intern(machine_.step(node(id).state, d));
    StateNode& n = nodes_[static_cast<std::size_t>(id)];
    (d == Decision::kAccept ? n.accept : n.reject) = cached;
    return cached;
  }

  // Runs the same recurrence the brute-force oracle applies round by round;
  // both children share one continuation value.
  Value replay_idle(double price, std::int64_t t, std::int64_t rounds, Value tail,
                    std::vector<Decision>* decisions) const {
    Value current = tail;
    for (std::int64_t j = rounds - 1; j >= 0; --j) {
      const Choice c = combine(v_, price, window_.rho(t + j), current, current, options_);
      current = c.value;
      if (decisions) (*decisions)[static_cast<std::size_t>(j)] = c.decision;
    }
    return current;
  }

  bool clearly_below(double bound, double value) const {
    const double margin = 1e-9 * std::abs(bound) + 1e-12;
    return bound + margin < value - options_.tie_window;
  }

  // Bound on W at (id, t) from the machine's price floors, tightened by the
  // solved value of the state at an earlier round when the discount is
  // stationary.
  double upper_bound(std::int32_t id, std::int64_t t) const {
    if (t > horizon_) return 0.0;
    if (auto it = memo_.find(key(id, t)); it != memo_.end()) return it->second.value.w;
    double best = floor_bound(node(id), t);
    if (window_.stationary() && node(id).earliest_t <= t) best = std::min(best, node(id).earliest_w);
    return best;
  }

  // Walks the reject chain from (id, t), bounding each accept successor with
  // upper_bound; stops at the first idle state or after kChainDepth rounds.
  double chain_bound(std::int32_t id, std::int64_t t) {
    static constexpr int kChainDepth = 64;
    double scale = 1.0;
    double best = 0.0;
    for (int depth = 0; depth < kChainDepth; ++depth, ++t) {
      if (t > horizon_) return best;
      if (auto it = memo_.find(key(id, t)); it != memo_.end()) {
        return std::max(best, scale * it->second.value.w);
      }
      if (node(id).idle) break;
      const double rho = window_.rho(t);
      best = std::max(best, scale * ((v_ - node(id).price) +
                                     rho * upper_bound(child(id, Decision::kAccept), t + 1)));
      scale *= rho;
      id = child(id, Decision::kReject);
    }
    return std::max(best, scale * upper_bound(id, t));
  }

  double floor_bound(const StateNode& n, std::int64_t t) const {
    if (!n.has_floor) return std::numeric_limits<double>::infinity();
    const std::int64_t forced = std::min(n.forced, horizon_ - t + 1);
    double best = n.rest_gain * window_.scaled_sum(t + n.forced, t);
    for (std::int64_t i = 0; i < forced; ++i) {
      const double candidate =
          n.offer_gain * window_.ratio(t + i, t) + n.accept_gain * window_.scaled_sum(t + i + 1, t);
      best = std::max(best, candidate);
    }
    return best;
  }

  void store(std::int32_t id, std::int64_t t, MemoEntry entry) {
    if (memo_.size() >= options_.max_keys) {
      throw MemoryBudgetExceeded("memoized oracle exceeded " + std::to_string(options_.max_keys) +
                                 " keys");
    }
    memo_.emplace(key(id, t), entry);
    StateNode& n = nodes_[static_cast<std::size_t>(id)];
    if (t < n.earliest_t) {
      n.earliest_t = t;
      n.earliest_w = entry.value.w;
    }
  }

  const PricingMachine& machine_;
  double v_;
  const DiscountWindow& window_;
  std::int64_t horizon_;
  const OracleOptions& options_;
  std::vector<StateNode> nodes_;
  std::unordered_map<PricingState, std::int32_t, PricingStateHash> ids_;
  std::unordered_map<std::uint64_t, MemoEntry> memo_;
};

PlayRecord empty_play(double v, std::int64_t horizon, std::int64_t first_round) {
  PlayRecord play;
  play.v = v;
  play.horizon = horizon;
  play.first_round = first_round;
  return play;
}

}  // namespace

OptimalPlay optimal_play_bruteforce(const PricingMachine& machine, double v,
                                    const DiscountSequence& discount, std::int64_t horizon,
                                    const OracleOptions& options,
                                    const std::optional<Subgame>& start) {
  const std::int64_t t0 = start ? start->round : 1;
  check_inputs(v, horizon, t0);
  if (horizon > options.bruteforce_cap) {
    throw HorizonTooLarge("brute-force oracle supports T <= " +
                          std::to_string(options.bruteforce_cap) + ", got " +
                          std::to_string(horizon));
  }
  const DiscountWindow window(discount, t0, horizon);
  BruteForce solver(machine, v, window, horizon, options);
  PricingState state = start ? start->state : machine.initial_state();
  const Value root = solver.solve(state, t0);
  const std::size_t nodes = solver.nodes();

  PlayRecord play = empty_play(v, horizon, t0);
  for (std::int64_t t = t0; t <= horizon; ++t) {
    const Decision d = solver.decide(state, t);
    play.prices.push_back(machine.offer(state));
    play.decisions.push_back(d);
    state = machine.step(state, d);
  }
  return finish(play, discount, root.w, root.regret, nodes);
}

OptimalPlay optimal_play_memoized(const PricingMachine& machine, double v,
                                  const DiscountSequence& discount, std::int64_t horizon,
                                  const OracleOptions& options,
                                  const std::optional<Subgame>& start) {
  const std::int64_t t0 = start ? start->round : 1;
  check_inputs(v, horizon, t0);
  const DiscountWindow window(discount, t0, horizon);
  Memoized solver(machine, v, window, horizon, options);
  const std::int32_t root_id = solver.intern(start ? start->state : machine.initial_state());
  const Value root = solver.solve(root_id, t0);
  PlayRecord play = solver.extract(root_id, t0, empty_play(v, horizon, t0));
  return finish(play, discount, root.w, root.regret, solver.nodes());
}

}  // namespace plab
