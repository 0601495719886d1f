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

#ifndef PRICING_LAB_REGRET_HPP
#define PRICING_LAB_REGRET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pricing_lab/buyer.hpp"
#include "pricing_lab/discounts.hpp"
#include "pricing_lab/pricing.hpp"

namespace plab {

enum class OracleKind { kBruteForce, kMemoized };

std::string to_string(OracleKind kind);
OracleKind parse_oracle(const std::string& text);

/// sum_t (v - a_t p_t).
double regret_of(const PlayRecord& play);

/// Right-hand side of a regret bound as a function of (T, v).
using BoundFunction = std::function<double(std::int64_t, double)>;

struct RegretReport {
  // Labels filled in by the caller.
  std::string alg;
  std::string discount;
  std::optional<std::int64_t> r;
  std::optional<double> kappa;
  std::string g_policy;

  double v = 0.0;
  std::int64_t horizon = 0;
  OracleKind oracle = OracleKind::kMemoized;
  TieBreak tie_break = TieBreak::kMaxRegret;
  double sreg = 0.0;
  std::optional<double> bound_rhs;
  std::optional<bool> within_bound;
  bool locally_non_losing = true;
  std::size_t node_count = 0;
  std::string error;
};

/// Slack allowed when comparing a measured regret against a bound.
inline constexpr double kBoundSlack = 1e-9;

OptimalPlay solve_optimal_play(const PricingMachine& machine, double v,
                               const DiscountSequence& discount, std::int64_t horizon,
                               OracleKind oracle, const OracleOptions& options = {});

RegretReport strategic_regret(const PricingMachine& machine, double v,
                              const DiscountSequence& discount, std::int64_t horizon,
                              OracleKind oracle, const OracleOptions& options = {},
                              const BoundFunction& bound = {});

/// One report per (v, T), v-major. Cell failures land in `error`.
std::vector<RegretReport> regret_curve(const PricingMachine& machine,
                                       const std::vector<double>& v_grid,
                                       const std::vector<std::int64_t>& t_grid,
                                       const DiscountSequence& discount, OracleKind oracle,
                                       const OracleOptions& options = {},
                                       const BoundFunction& bound = {});

struct SlopeRow {
  std::int64_t horizon = 0;
  double sreg = 0.0;
  double slope = 0.0;
  /// False when T <= t1, where the linear bound is not claimed.
  bool in_regime = false;
  bool holds = false;
};

struct LinearRegretWitness {
  DecisionPath path;  // decisions leading to the node at round t1 + 1
  std::vector<Price> prices;
  std::int64_t t0 = 0;
  std::int64_t t1 = 0;
  Price delta;
  Price first_price;
  double epsilon0 = 0.0;
  double epsilon = 0.0;
  double v = 0.0;
  std::vector<SlopeRow> slopes;

  bool all_hold() const;
};

struct LinearRegretOptions {
  int search_depth = 16;
  OracleKind oracle = OracleKind::kMemoized;
  OracleOptions oracle_options;
};

/// Searches for a double price decrease below the first price, derives the
/// valuation p_1 + eps with eps = eps0 / 2, and measures sreg(T) / T.
/// Throws NoDoubleDecreaseFound when no such path exists within the depth.
LinearRegretWitness check_linear_regret(const PricingMachine& machine,
                                        const DiscountSequence& discount,
                                        const std::vector<std::int64_t>& t_grid,
                                        const LinearRegretOptions& options = {});

}  // namespace plab

#endif  // PRICING_LAB_REGRET_HPP
