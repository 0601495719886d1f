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

#include "pricing_lab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pricing_lab/discounts.hpp"
#include "pricing_lab/errors.hpp"
#include "pricing_lab/numeric.hpp"

namespace plab {

namespace {

void require_rate(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw PreconditionViolated("discount rate must lie in (0, 1)");
  }
}

void require_positive_kappa(double kappa) {
  if (!(kappa > 0.0)) throw PreconditionViolated("kappa must be positive");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

void require_pre_range(double gamma, double kappa) {
  require_rate(gamma);
  if (!(gamma > golden_rate_threshold())) {
    throw PreconditionViolated("gamma = " + fmt(gamma) + " must exceed (sqrt(5) - 1) / 2 = " +
                               fmt(golden_rate_threshold()));
  }
  if (!(kappa > kappa_threshold(gamma))) {
    throw PreconditionViolated("kappa = " + fmt(kappa) +
                               " must exceed (1 - gamma) / (gamma^2 + gamma - 1) = " +
                               fmt(kappa_threshold(gamma)));
  }
}

// Factor shared by r_{gamma,kappa} and G_{gamma,kappa}.
double lift(double gamma, double kappa) { return 1.0 + kappa / (1.0 + kappa) * gamma; }

double loglog_term(std::int64_t horizon) {
  if (horizon < 2) throw PreconditionViolated("bound needs T >= 2");
  return std::log2(std::log2(static_cast<double>(horizon))) + 2.0;
}

}  // namespace

double golden_rate_threshold() { return (std::sqrt(5.0) - 1.0) / 2.0; }

double kappa_threshold(double gamma) {
  require_rate(gamma);
  const double denom = gamma * gamma + gamma - 1.0;
  if (!(denom > 0.0)) {
    throw PreconditionViolated("gamma = " + fmt(gamma) + " admits no kappa threshold");
  }
  return (1.0 - gamma) / denom;
}

double eta(double gamma, std::int64_t r) {
  require_rate(gamma);
  const double gr = std::pow(gamma, static_cast<double>(r));
  const double denom = 1.0 - gamma * gamma - gr;
  if (!(denom > 0.0)) {
    throw ConditionViolated("1 - gamma^2 - gamma^r = " + fmt(denom) + " is not positive for r = " +
                            std::to_string(r));
  }
  return (gr + gamma - 1.0) / denom;
}

double r_gamma_kappa(double gamma, double kappa) {
  require_pre_range(gamma, kappa);
  return log_base((1.0 - gamma) * lift(gamma, kappa), gamma);
}

double g_gamma_kappa(double gamma, double kappa) {
  require_pre_range(gamma, kappa);
  return log_base(1.0 - 1.0 / (lift(gamma, kappa) * gamma), gamma);
}

double c_factor(std::int64_t r, double kappa, double v) {
  return static_cast<double>(r) * v + ((2.0 + kappa) * (2.0 + kappa) - 1.0) / 2.0;
}

double prrfes_bound_rhs(std::int64_t horizon, std::int64_t r, double kappa, double v) {
  return c_factor(r, kappa, v) * loglog_term(horizon);
}

double preprrfes_bound_rhs(std::int64_t horizon, std::int64_t r, double kappa, double v,
                           double big_g) {
  const auto g_ceil = static_cast<double>(ceil_snapped(big_g));
  const double factor = static_cast<double>(r) * v +
                        (1.0 + kappa) / 2.0 * (2.0 + std::max(2.0, g_ceil) + kappa);
  return factor * loglog_term(horizon) + g_ceil / 2.0 - 1.0;
}

std::int64_t min_penalization_rounds(double gamma) {
  require_rate(gamma);
  return ceil_snapped(log_base(1.0 - gamma, gamma));
}

std::int64_t r_for_kappa_geometric(double gamma, double kappa) {
  require_rate(gamma);
  require_positive_kappa(kappa);
  return ceil_snapped(log_base(kappa / (1.0 + kappa) * (1.0 - gamma), gamma));
}

double optimal_kappa(double gamma) {
  require_rate(gamma);
  const double target = 1.0 / std::log(1.0 / gamma);
  auto cubic = [](double k) { return k * (k + 1.0) * (k + 2.0); };
  double lo = 1e-9;
  double hi = 1e6;
  if (cubic(lo) > target || cubic(hi) < target) {
    throw PreconditionViolated("gamma = " + fmt(gamma) + " is outside the kappa search bracket");
  }
  // Bisect until the bracket stops shrinking in double precision.
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (cubic(mid) < target ? lo : hi) = mid;
  }
  return std::abs(cubic(lo) - target) <= std::abs(cubic(hi) - target) ? lo : hi;
}

double factor_bound(double gamma, double kappa) {
  require_rate(gamma);
  require_positive_kappa(kappa);
  return log_base(kappa * (1.0 - gamma) / (1.0 + kappa), gamma) + 1.0 +
         ((2.0 + kappa) * (2.0 + kappa) - 1.0) / 2.0;
}

FactorImprovement factor_improvement(double gamma) {
  FactorImprovement out;
  out.kappa0 = optimal_kappa(gamma);
  out.f_one = factor_bound(gamma, 1.0);
  out.f_kappa0 = factor_bound(gamma, out.kappa0);
  out.reduction_percent = (out.f_one - out.f_kappa0) / out.f_one * 100.0;
  return out;
}

BoundParams bound_params(double gamma, double kappa) {
  BoundParams out;
  out.gamma = gamma;
  out.kappa = kappa;
  out.min_rounds = min_penalization_rounds(gamma);
  out.r_for_kappa = r_for_kappa_geometric(gamma, kappa);
  try {
    out.zeta_at_r_for_kappa = zeta(DiscountSequence::geometric(gamma), out.r_for_kappa, 1);
  } catch (const ConditionViolated&) {
  }
  try {
    out.kappa_min = kappa_threshold(gamma);
    out.r_gk = r_gamma_kappa(gamma, kappa);
    out.r_pre = ceil_snapped(*out.r_gk);
    out.g_gk = g_gamma_kappa(gamma, kappa);
    out.eta_at_r_pre = eta(gamma, *out.r_pre);
  } catch (const Error& e) {
    out.pre_note = e.what();
  }
  return out;
}

std::string prrfes_ineligibility(double gamma, std::int64_t r, double kappa) {
  if (!(gamma > 0.0 && gamma < 1.0)) return "discount rate outside (0, 1)";
  if (!(kappa > 0.0)) return "kappa must be positive";
  if (r < 1) return "r must be >= 1";
  try {
    const double z = zeta(DiscountSequence::geometric(gamma), r, 1);
    if (!(z < kappa)) return "zeta = " + fmt(z) + " is not below kappa = " + fmt(kappa);
  } catch (const ConditionViolated& e) {
    return e.what();
  }
  return {};
}

std::string preprrfes_ineligibility(double gamma, std::int64_t r, double kappa, double big_g) {
  try {
    require_pre_range(gamma, kappa);
  } catch (const Error& e) {
    return e.what();
  }
  const std::int64_t r_needed = ceil_snapped(r_gamma_kappa(gamma, kappa));
  if (r != r_needed) {
    return "r = " + std::to_string(r) + " differs from ceil(r_gamma_kappa) = " +
           std::to_string(r_needed);
  }
  const double g_needed = g_gamma_kappa(gamma, kappa);
  if (big_g < g_needed - kIntegerSnap) {
    return "G = " + fmt(big_g) + " is below G_gamma_kappa = " + fmt(g_needed);
  }
  return {};
}

}  // namespace plab
