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

#include <doctest.h>

#include <cmath>

#include "pricing_lab/bounds.hpp"
#include "pricing_lab/discounts.hpp"
#include "pricing_lab/errors.hpp"

using namespace plab;

namespace {

// Independent bisection for k (k + 1) (k + 2) = 1 / ln(1 / gamma).
double kappa_root(double gamma) {
  const double target = 1.0 / std::log(1.0 / gamma);
  double lo = 0.0, hi = 1e6;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (mid * (mid + 1) * (mid + 2) < target ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("eta") {
  CHECK(eta(0.8, 5) == doctest::Approx(0.12768 / 0.03232).epsilon(1e-10));
  CHECK(eta(0.8, 5) == doctest::Approx(3.9505).epsilon(1e-4));
  CHECK_THROWS_AS(eta(0.8, 4), ConditionViolated);
  const auto r = static_cast<std::int64_t>(std::ceil(r_gamma_kappa(0.75, 1.0)));
  CHECK(r == 4);
  CHECK(eta(0.75, r) <= 1.0);
}

TEST_CASE("lemma constants") {
  CHECK(r_gamma_kappa(0.75, 1.0) == doctest::Approx(std::log(0.34375) / std::log(0.75)));
  CHECK(r_gamma_kappa(0.75, 1.0) == doctest::Approx(3.712).epsilon(1e-3));
  CHECK(g_gamma_kappa(0.75, 1.0) == doctest::Approx(12.154).epsilon(1e-4));
  CHECK(std::ceil(g_gamma_kappa(0.75, 1.0)) == 13);
  CHECK(kappa_threshold(0.7) == doctest::Approx(0.3 / 0.19));
  CHECK_THROWS_AS(r_gamma_kappa(0.7, 1.0), PreconditionViolated);
  CHECK_THROWS_AS(g_gamma_kappa(0.6, 5.0), PreconditionViolated);
  const double r = std::ceil(r_gamma_kappa(0.75, 1.0));
  CHECK(r < std::log(0.25) / std::log(0.75));
  CHECK(r > std::log(1 - 0.5625) / std::log(0.75));
}

TEST_CASE("bound right-hand sides") {
  CHECK(c_factor(8, 1.0, 1.0) == 12.0);
  CHECK(prrfes_bound_rhs(65536, 8, 1.0, 1.0) == doctest::Approx(72.0));
  CHECK(prrfes_bound_rhs(4096, 11, 1.0, 0.73) ==
        doctest::Approx(12.03 * (std::log2(12.0) + 2.0)).epsilon(1e-12));
  CHECK(prrfes_bound_rhs(4096, 11, 1.0, 0.73) == doctest::Approx(67.2).epsilon(1e-3));
  CHECK(preprrfes_bound_rhs(256, 4, 1.0, 1.0, 12.154) == doctest::Approx(105.5));
  // ceil(G) = 2 and ceil(G) = 1 both use 2 inside the max.
  CHECK(preprrfes_bound_rhs(256, 4, 1.0, 1.0, 1.5) - preprrfes_bound_rhs(256, 4, 1.0, 1.0, 0.5) ==
        doctest::Approx(0.5));
  double last = 0.0;
  for (std::int64_t t = 2; t <= (1 << 20); t *= 2) {
    const double rhs = preprrfes_bound_rhs(t, 4, 1.0, 0.5, 12.154);
    CHECK(rhs >= last);
    last = rhs;
  }
}

TEST_CASE("penalization round counts") {
  CHECK(min_penalization_rounds(0.75) == 5);
  CHECK(r_for_kappa_geometric(0.75, 1.0) == 8);
  CHECK(min_penalization_rounds(0.95) == 59);
  CHECK(r_for_kappa_geometric(0.95, 1.0) == 72);
  CHECK(min_penalization_rounds(0.5) == 1);
  for (double g : {0.3, 0.5, 0.8, 0.9}) {
    const std::int64_t r = r_for_kappa_geometric(g, 1.0);
    CHECK(zeta(DiscountSequence::geometric(g), r, 1) <= 1.0 + 1e-12);
  }
}

TEST_CASE("optimal kappa") {
  CHECK(optimal_kappa(0.75) == doctest::Approx(0.734).epsilon(5e-4 / 0.734));
  CHECK(optimal_kappa(0.95) == doctest::Approx(1.815).epsilon(5e-4 / 1.815));
  CHECK(optimal_kappa(0.99) == doctest::Approx(3.706).epsilon(5e-4 / 3.706));
  for (double g : {0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) {
    CHECK(std::abs(optimal_kappa(g) - kappa_root(g)) <= 1e-8);
  }
}

TEST_CASE("factor improvement") {
  const double expected[][2] = {{0.05, 33.2}, {0.75, 1.5}, {0.99, 6.3}};
  for (const auto& row : expected) {
    const FactorImprovement f = factor_improvement(row[0]);
    CHECK(std::abs(f.reduction_percent - row[1]) <= 0.1);
    CHECK(f.f_kappa0 <= f.f_one);
    CHECK(f.f_one == doctest::Approx(factor_bound(row[0], 1.0)));
  }
}

TEST_CASE("eligibility messages") {
  CHECK(prrfes_ineligibility(0.8, 11, 1.0).empty());
  CHECK_FALSE(prrfes_ineligibility(0.8, 3, 1.0).empty());
  const double g = g_gamma_kappa(0.8, 1.6);
  const auto r = static_cast<std::int64_t>(std::ceil(r_gamma_kappa(0.8, 1.6)));
  CHECK(preprrfes_ineligibility(0.8, r, 1.6, g).empty());
  CHECK_FALSE(preprrfes_ineligibility(0.8, r + 1, 1.6, g).empty());
  CHECK_FALSE(preprrfes_ineligibility(0.8, r, 1.6, g - 1.0).empty());
  CHECK_FALSE(preprrfes_ineligibility(0.5, r, 1.6, g).empty());
  const BoundParams p = bound_params(0.6, 1.0);
  CHECK_FALSE(p.r_pre.has_value());
  CHECK_FALSE(p.pre_note.empty());
}
