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

#include "pricing_lab/discounts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "pricing_lab/errors.hpp"
#include "pricing_lab/numeric.hpp"

namespace plab {

namespace {

constexpr double kConcavityTolerance = 1e-12;

void require_round(std::int64_t t) {
  if (t < 1) throw PreconditionViolated("round index must be >= 1, got " + std::to_string(t));
}

}  // namespace

DiscountSequence DiscountSequence::geometric(double rate) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw PreconditionViolated("geometric rate must lie in (0, 1), got " + std::to_string(rate));
  }
  DiscountSequence seq;
  seq.geometric_ = true;
  seq.rate_ = rate;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", rate);
  seq.name_ = buf;
  seq.weight_ = [rate](std::int64_t t) { return std::pow(rate, static_cast<double>(t - 1)); };
  return seq;
}

DiscountSequence DiscountSequence::general(std::string name, Weight weight,
                                           Weight analytic_tail, double tolerance,
                                           std::int64_t term_cap) {
  if (!weight) throw PreconditionViolated("general discount needs a weight function");
  if (!(tolerance > 0.0)) throw PreconditionViolated("tail tolerance must be positive");
  if (term_cap < 1) throw PreconditionViolated("term cap must be positive");
  DiscountSequence seq;
  seq.name_ = std::move(name);
  seq.weight_ = std::move(weight);
  seq.analytic_tail_ = std::move(analytic_tail);
  seq.tolerance_ = tolerance;
  seq.term_cap_ = term_cap;
  // Fails construction for sequences whose sum cannot be resolved.
  if (!seq.analytic_tail_) seq.numeric_tail_sum(1);
  return seq;
}

DiscountSequence DiscountSequence::telescoping() {
  return general(
      "telescoping",
      [](std::int64_t t) {
        const double x = static_cast<double>(t);
        return 1.0 / (x * (x + 1.0));
      },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); });
}

DiscountSequence DiscountSequence::named(const std::string& name) {
  if (name == "telescoping") return telescoping();
  throw PreconditionViolated("unknown discount sequence '" + name + "'");
}

double DiscountSequence::rate() const {
  if (!geometric_) throw PreconditionViolated("sequence '" + name_ + "' is not geometric");
  return rate_;
}

double DiscountSequence::gamma_at(std::int64_t t) const {
  require_round(t);
  const double w = weight_(t);
  if (!(w > 0.0)) {
    throw PreconditionViolated("discount weight at round " + std::to_string(t) +
                               " is not positive");
  }
  return w;
}

double DiscountSequence::tail_sum(std::int64_t t) const {
  require_round(t);
  if (geometric_) return std::pow(rate_, static_cast<double>(t - 1)) / (1.0 - rate_);
  if (analytic_tail_) return analytic_tail_(t);
  return numeric_tail_sum(t);
}

double DiscountSequence::numeric_tail_sum(std::int64_t t) const {
  require_round(t);
  // Neumaier summation; stop once the geometric majorant of the remainder,
  // gamma_{s+1} / (1 - gamma_{s+2}/gamma_{s+1}), is negligible.
  double sum = 0.0;
  double carry = 0.0;
  double current = gamma_at(t);
  for (std::int64_t s = t, terms = 0; terms < term_cap_; ++s, ++terms) {
    const double next_sum = sum + current;
    if (std::abs(sum) >= std::abs(current)) {
      carry += (sum - next_sum) + current;
    } else {
      carry += (current - next_sum) + sum;
    }
    sum = next_sum;
    const double next = weight_(s + 1);
    if (!(next > 0.0)) return sum + carry;  // Underflowed: nothing left to add.
    const double after = weight_(s + 2);
    const double ratio = after / next;
    if (ratio < 1.0 && next / (1.0 - ratio) <= tolerance_ * (sum + carry)) {
      return sum + carry;
    }
    current = next;
  }
  throw ConvergenceNotReached("tail sum of '" + name_ + "' from round " + std::to_string(t) +
                              " did not converge within " + std::to_string(term_cap_) +
                              " terms");
}

double DiscountSequence::ratio(std::int64_t a, std::int64_t b) const {
  if (geometric_) return std::pow(rate_, static_cast<double>(a - b));
  return gamma_at(a) / gamma_at(b);
}

namespace {

double zeta_from(double gamma_t, double tail, std::int64_t r, std::int64_t t) {
  if (!(gamma_t > tail)) {
    throw ConditionViolated("gamma_" + std::to_string(t) + " <= tail sum from round " +
                            std::to_string(t + r) + "; r = " + std::to_string(r) +
                            " is too small");
  }
  return tail / (gamma_t - tail);
}

}  // namespace

double zeta(const DiscountSequence& seq, std::int64_t r, std::int64_t t) {
  if (r < 1) throw PreconditionViolated("penalization length must be >= 1");
  require_round(t);
  if (seq.is_geometric()) {
    // gamma^{t-1} cancels; evaluate the t-free form.
    const double g = seq.rate();
    const double gr = std::pow(g, static_cast<double>(r));
    return zeta_from(1.0 - g, gr, r, t);
  }
  return zeta_from(seq.gamma_at(t), seq.tail_sum(t + r), r, t);
}

double zeta_numeric(const DiscountSequence& seq, std::int64_t r, std::int64_t t) {
  if (r < 1) throw PreconditionViolated("penalization length must be >= 1");
  return zeta_from(seq.gamma_at(t), seq.numeric_tail_sum(t + r), r, t);
}

bool is_geometrically_concave(const DiscountSequence& seq, std::int64_t horizon) {
  if (horizon < 3) throw PreconditionViolated("concavity scan needs horizon >= 3");
  if (seq.is_geometric()) return true;
  double previous = seq.gamma_at(1);
  double previous_ratio = 0.0;
  for (std::int64_t t = 2; t <= horizon; ++t) {
    const double current = seq.gamma_at(t);
    if (!(current < previous)) return false;
    const double ratio = current / previous;
    if (t > 2 && ratio > previous_ratio * (1.0 + kConcavityTolerance)) return false;
    previous_ratio = ratio;
    previous = current;
  }
  return true;
}

std::int64_t penalization_rounds_for_kappa(const DiscountSequence& seq, double kappa,
                                           std::int64_t scan_horizon) {
  if (!(kappa > 0.0)) throw PreconditionViolated("kappa must be positive");
  if (!is_geometrically_concave(seq, scan_horizon)) {
    throw NotConcave("discount '" + seq.name() + "' is not geometrically concave up to round " +
                     std::to_string(scan_horizon));
  }
  const double alpha = seq.ratio(2, 1);
  const double r = next_integer_above(log_base(kappa * (1.0 - alpha) / (1.0 + kappa), alpha));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(r));
}

}  // namespace plab
