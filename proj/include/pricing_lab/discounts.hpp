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

#ifndef PRICING_LAB_DISCOUNTS_HPP
#define PRICING_LAB_DISCOUNTS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace plab {

/// Buyer discount weights gamma_t, t >= 1.
///
/// Geometric sequences are evaluated in closed form. General sequences carry
/// a weight function and optionally an analytic tail; otherwise tails are
/// summed numerically until the remainder estimate falls below
/// `tolerance` times the accumulated sum.
class DiscountSequence {
 public:
  using Weight = std::function<double(std::int64_t)>;

  static constexpr double kDefaultTolerance = 1e-12;
  static constexpr std::int64_t kDefaultTermCap = 10'000'000;

  static DiscountSequence geometric(double rate);
  /// Throws ConvergenceNotReached when tail_sum(1) cannot be resolved within
  /// `term_cap` terms and no analytic tail is given.
  static DiscountSequence general(std::string name, Weight weight,
                                  Weight analytic_tail = {},
                                  double tolerance = kDefaultTolerance,
                                  std::int64_t term_cap = kDefaultTermCap);
  /// gamma_t = 1 / (t (t + 1)), tail 1 / t.
  static DiscountSequence telescoping();
  /// Built-in sequences by name: "telescoping".
  static DiscountSequence named(const std::string& name);

  bool is_geometric() const { return geometric_; }
  /// The rate of a geometric sequence; throws for general ones.
  double rate() const;
  const std::string& name() const { return name_; }
  double tolerance() const { return tolerance_; }
  std::int64_t term_cap() const { return term_cap_; }

  double gamma_at(std::int64_t t) const;
  /// sum_{s >= t} gamma_s; analytic when available.
  double tail_sum(std::int64_t t) const;
  /// sum_{s >= t} gamma_s by truncated summation, ignoring closed forms.
  double numeric_tail_sum(std::int64_t t) const;
  /// gamma_a / gamma_b, evaluated without forming tiny powers for geometric
  /// sequences.
  double ratio(std::int64_t a, std::int64_t b) const;

 private:
  DiscountSequence() = default;

  bool geometric_ = false;
  double rate_ = 0.0;
  std::string name_;
  Weight weight_;
  Weight analytic_tail_;
  double tolerance_ = kDefaultTolerance;
  std::int64_t term_cap_ = kDefaultTermCap;
};

/// zeta_{r,t} = tail(t + r) / (gamma_t - tail(t + r)).
/// Throws ConditionViolated when gamma_t <= tail(t + r).
double zeta(const DiscountSequence& seq, std::int64_t r, std::int64_t t);
/// Same quantity computed from numeric tails only.
double zeta_numeric(const DiscountSequence& seq, std::int64_t r, std::int64_t t);

/// True iff the ratios gamma_{t+1}/gamma_t are nonincreasing and the weights
/// decrease on [1, horizon].
bool is_geometrically_concave(const DiscountSequence& seq, std::int64_t horizon);

/// Smallest integer strictly above log_{a}(kappa (1 - a) / (1 + kappa)),
/// a = gamma_2 / gamma_1. Concavity is checked up to `scan_horizon`.
std::int64_t penalization_rounds_for_kappa(const DiscountSequence& seq,
                                           double kappa,
                                           std::int64_t scan_horizon = 1000);

}  // namespace plab

#endif  // PRICING_LAB_DISCOUNTS_HPP
