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

#ifndef PRICING_LAB_BUYER_HPP
#define PRICING_LAB_BUYER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pricing_lab/discounts.hpp"
#include "pricing_lab/pricing.hpp"

namespace plab {

/// A realized game. Rounds are numbered from `first_round` (1 for full games,
/// later for subgames).
struct PlayRecord {
  std::vector<Price> prices;
  DecisionPath decisions;
  double v = 0.0;
  std::int64_t horizon = 0;
  std::int64_t first_round = 1;
};

/// Secondary objective among surplus-optimal strategies.
enum class TieBreak { kMaxRegret, kPreferReject, kPreferAccept };

std::string to_string(TieBreak tie_break);
TieBreak parse_tie_break(const std::string& text);

struct OracleOptions {
  TieBreak tie_break = TieBreak::kMaxRegret;
  /// Surplus differences within this window (in units of gamma at the
  /// decision round) count as ties.
  double tie_window = 0.0;
  std::int64_t bruteforce_cap = 22;
  /// Distinct memo keys allowed before MemoryBudgetExceeded.
  std::size_t max_keys = 20'000'000;
};

/// Optional subgame root: solve from `state` at round `round`.
struct Subgame {
  PricingState state;
  std::int64_t round = 1;
};

struct OptimalPlay {
  double surplus = 0.0;
  PlayRecord play;
  double seller_regret = 0.0;
  std::size_t node_count = 0;
};

/// sum_t gamma_t a_t (v - p_t).
double surplus_of(const PlayRecord& play, const DiscountSequence& discount);

/// Accepts exactly the prices <= v.
PlayRecord truthful_play(const PricingMachine& machine, double v, std::int64_t horizon);

/// Full backward induction over the depth-T tree.
OptimalPlay optimal_play_bruteforce(const PricingMachine& machine, double v,
                                    const DiscountSequence& discount, std::int64_t horizon,
                                    const OracleOptions& options = {},
                                    const std::optional<Subgame>& start = std::nullopt);

/// Same argmax with memoization on (state, round), collapsing idle rounds
/// and skipping subtrees whose surplus bound cannot reach the sibling's value.
OptimalPlay optimal_play_memoized(const PricingMachine& machine, double v,
                                  const DiscountSequence& discount, std::int64_t horizon,
                                  const OracleOptions& options = {},
                                  const std::optional<Subgame>& start = std::nullopt);

bool is_locally_non_losing(const PlayRecord& play);

}  // namespace plab

#endif  // PRICING_LAB_BUYER_HPP
