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

#ifndef PRICING_LAB_BOUNDS_HPP
#define PRICING_LAB_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace plab {

/// Lower end of the rate range where a prePRRFES configuration exists,
/// (sqrt(5) - 1) / 2.
double golden_rate_threshold();
/// Smallest kappa admitted for prePRRFES at rate gamma,
/// (1 - gamma) / (gamma^2 + gamma - 1).
double kappa_threshold(double gamma);

/// eta = (gamma^r + gamma - 1) / (1 - gamma^2 - gamma^r).
double eta(double gamma, std::int64_t r);

double r_gamma_kappa(double gamma, double kappa);
double g_gamma_kappa(double gamma, double kappa);

/// C = r v + ((2 + kappa)^2 - 1) / 2.
double c_factor(std::int64_t r, double kappa, double v);
/// C (log2 log2 T + 2).
double prrfes_bound_rhs(std::int64_t horizon, std::int64_t r, double kappa, double v);
/// (r v + (1 + kappa)/2 (2 + max(2, ceil G) + kappa)) (log2 log2 T + 2) + ceil G / 2 - 1.
double preprrfes_bound_rhs(std::int64_t horizon, std::int64_t r, double kappa, double v,
                           double big_g);

/// ceil(log_gamma(1 - gamma)).
std::int64_t min_penalization_rounds(double gamma);
/// ceil(log_gamma(kappa (1 - gamma) / (1 + kappa))).
std::int64_t r_for_kappa_geometric(double gamma, double kappa);

/// Positive root of kappa (kappa + 1) (kappa + 2) = 1 / ln(1 / gamma).
double optimal_kappa(double gamma);

/// f(kappa) = log_gamma(kappa (1 - gamma) / (1 + kappa)) + 1 + ((2 + kappa)^2 - 1) / 2.
double factor_bound(double gamma, double kappa);

struct FactorImprovement {
  double kappa0 = 0.0;
  double f_one = 0.0;
  double f_kappa0 = 0.0;
  double reduction_percent = 0.0;
};

FactorImprovement factor_improvement(double gamma);

/// Constants for one (gamma, kappa) pair; optional entries are absent where
/// their preconditions fail.
struct BoundParams {
  double gamma = 0.0;
  double kappa = 0.0;
  std::int64_t min_rounds = 0;
  std::int64_t r_for_kappa = 0;
  std::optional<double> zeta_at_r_for_kappa;
  std::optional<double> kappa_min;  // prePRRFES kappa threshold
  std::optional<double> r_gk;
  std::optional<std::int64_t> r_pre;
  std::optional<double> g_gk;
  std::optional<double> eta_at_r_pre;
  std::string pre_note;  // why the prePRRFES constants are absent
};

BoundParams bound_params(double gamma, double kappa);

/// Bound eligibility. Each returns an empty string when eligible and a
/// reason otherwise.
std::string prrfes_ineligibility(double gamma, std::int64_t r, double kappa);
std::string preprrfes_ineligibility(double gamma, std::int64_t r, double kappa, double big_g);

}  // namespace plab

#endif  // PRICING_LAB_BOUNDS_HPP
