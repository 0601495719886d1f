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

#include "pricing_lab/regret.hpp"

#include <algorithm>
#include <utility>

#include "pricing_lab/errors.hpp"

namespace plab {

std::string to_string(OracleKind kind) {
  return kind == OracleKind::kBruteForce ? "bruteforce" : "memoized";
}

OracleKind parse_oracle(const std::string& text) {
  if (text == "bruteforce") return OracleKind::kBruteForce;
  if (text == "memoized") return OracleKind::kMemoized;
  throw PreconditionViolated("unknown oracle '" + text + "'");
}

double regret_of(const PlayRecord& play) {
  double total = 0.0;
  for (std::size_t i = 0; i < play.decisions.size(); ++i) {
    total += play.decisions[i] == Decision::kAccept ? play.v - play.prices[i].to_double()
                                                    : play.v;
  }
  return total;
}

OptimalPlay solve_optimal_play(const PricingMachine& machine, double v,
                               const DiscountSequence& discount, std::int64_t horizon,
                               OracleKind oracle, const OracleOptions& options) {
  if (oracle == OracleKind::kBruteForce) {
    return optimal_play_bruteforce(machine, v, discount, horizon, options);
  }
  return optimal_play_memoized(machine, v, discount, horizon, options);
}

RegretReport strategic_regret(const PricingMachine& machine, double v,
                              const DiscountSequence& discount, std::int64_t horizon,
                              OracleKind oracle, const OracleOptions& options,
                              const BoundFunction& bound) {
  RegretReport report;
  report.alg = machine.name();
  report.discount = discount.name();
  report.v = v;
  report.horizon = horizon;
  report.oracle = oracle;
  report.tie_break = options.tie_break;
  const OptimalPlay opt = solve_optimal_play(machine, v, discount, horizon, oracle, options);
  report.sreg = opt.seller_regret;
  report.node_count = opt.node_count;
  report.locally_non_losing = is_locally_non_losing(opt.play);
  if (bound) {
    report.bound_rhs = bound(horizon, v);
    report.within_bound = report.sreg <= *report.bound_rhs + kBoundSlack;
  }
  return report;
}

std::vector<RegretReport> regret_curve(const PricingMachine& machine,
                                       const std::vector<double>& v_grid,
                                       const std::vector<std::int64_t>& t_grid,
                                       const DiscountSequence& discount, OracleKind oracle,
                                       const OracleOptions& options, const BoundFunction& bound) {
  if (v_grid.empty() || t_grid.empty()) throw PreconditionViolated("grids must be nonempty");
  std::vector<RegretReport> reports;
  reports.reserve(v_grid.size() * t_grid.size());
  for (double v : v_grid) {
    for (std::int64_t horizon : t_grid) {
      try {
        reports.push_back(strategic_regret(machine, v, discount, horizon, oracle, options, bound));
      } catch (const Error& e) {
        RegretReport failed;
        failed.alg = machine.name();
        failed.discount = discount.name();
        failed.v = v;
        failed.horizon = horizon;
        failed.oracle = oracle;
        failed.tie_break = options.tie_break;
        failed.error = e.what();
        reports.push_back(std::move(failed));
      }
    }
  }
  return reports;
}

bool LinearRegretWitness::all_hold() const {
  return std::all_of(slopes.begin(), slopes.end(),
                     [](const SlopeRow& row) { return !row.in_regime || row.holds; });
}

namespace {

struct DecreaseSearch {
  const PricingMachine& machine;
  const DiscountSequence& discount;
  int depth;
  Price first;
  DecisionPath path;
  std::vector<Price> prices;
  std::optional<LinearRegretWitness> best;

  void visit(const PricingState& state) {
    prices.push_back(machine.offer(state));
    consider();
    if (static_cast<int>(prices.size()) < depth) {
      for (Decision d : {Decision::kReject, Decision::kAccept}) {
        path.push_back(d);
        visit(machine.step(state, d));
        path.pop_back();
      }
    }
    prices.pop_back();
  }

  // The newest price plays p_{t1+1}; pick the lowest earlier price strictly
  // between it and p_1 as p_{t0}.
  void consider() {
    const std::size_t k = prices.size();
    if (k < 2) return;
    const Price& last = prices.back();
    std::optional<std::size_t> t0;
    for (std::size_t i = 1; i + 1 < k; ++i) {
      if (last < prices[i] && prices[i] < first && (!t0 || prices[i] < prices[*t0])) t0 = i;
    }
    if (!t0) return;
    const auto t1 = static_cast<std::int64_t>(k - 1);
    const Price delta = first - prices[*t0];
    double head = 0.0;
    for (std::int64_t t = 1; t <= t1; ++t) head += discount.gamma_at(t);
    const double eps0 = std::min(delta.to_double() * discount.gamma_at(t1 + 1) / head,
                                 1.0 - first.to_double());
    if (best && !(eps0 > best->epsilon0)) return;
    LinearRegretWitness w;
    w.path = path;
    w.prices = prices;
    w.t0 = static_cast<std::int64_t>(*t0) + 1;
    w.t1 = t1;
    w.delta = delta;
    w.first_price = first;
    w.epsilon0 = eps0;
    best = std::move(w);
  }
};

}  // namespace

LinearRegretWitness check_linear_regret(const PricingMachine& machine,
                                        const DiscountSequence& discount,
                                        const std::vector<std::int64_t>& t_grid,
                                        const LinearRegretOptions& options) {
  const PricingState root = machine.initial_state();
  const Price first = machine.offer(root);
  DecreaseSearch search{machine, discount, options.search_depth, first, {}, {}, std::nullopt};
  search.visit(root);
  if (!search.best) {
    throw NoDoubleDecreaseFound("no double price decrease below " + first.to_string() +
                                " within depth " + std::to_string(options.search_depth));
  }
  if (!(Price() < first && first < Price::integer(1))) {
    throw PreconditionViolated("first price " + first.to_string() + " is not inside (0, 1)");
  }
  LinearRegretWitness witness = std::move(*search.best);
  witness.epsilon = witness.epsilon0 / 2.0;
  witness.v = first.to_double() + witness.epsilon;
  for (std::int64_t horizon : t_grid) {
    const OptimalPlay opt = solve_optimal_play(machine, witness.v, discount, horizon,
                                               options.oracle, options.oracle_options);
    SlopeRow row;
    row.horizon = horizon;
    row.sreg = opt.seller_regret;
    row.slope = row.sreg / static_cast<double>(horizon);
    row.in_regime = horizon > witness.t1;
    row.holds = row.sreg >= witness.epsilon * static_cast<double>(horizon);
    witness.slopes.push_back(row);
  }
  return witness;
}

}  // namespace plab
