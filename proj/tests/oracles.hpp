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


// Reference implementations used only by the tests. They share no code with
// the library beyond the public types they report in.

#ifndef PRICING_LAB_TESTS_ORACLES_HPP
#define PRICING_LAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

// What the seller shows in one round and where the algorithm stands.
struct Round {
  double price = 0.0;
  double q = 0.0;
  double p = 0.0;
  int l = 0;
  int mode = 0;  // 0 explore, 1 penalize, 2 exploit
};

inline double step_size(int l) { return std::ldexp(1.0, -(1 << l)); }

inline std::int64_t default_rate(int l) { return std::int64_t{1} << (1 << l); }

// Runs the PRRFES loop round by round against a fixed decision list. With
// `carried` every offer is q instead of p.
inline std::vector<Round> prrfes_rounds(std::int64_t r, const std::function<std::int64_t(int)>& g,
                                        const std::vector<int>& decisions, bool carried) {
  std::vector<Round> out;
  double q = 0.0;
  int l = 0;
  double p = 0.5;
  std::size_t i = 0;
  auto emit = [&](double offered, int mode) {
    out.push_back({offered, q, p, l, mode});
    return decisions[i++];
  };
  while (i < decisions.size()) {
    // exploration: walk up until a price is turned down
    bool rejected = false;
    while (!rejected && i < decisions.size()) {
      const double offered = carried ? q : p;
      if (emit(offered, 0) == 1) {
        q = p;
        if (q < 1.0) p = q + step_size(l);
        continue;
      }
      // penalization: the same price r - 1 more times, an accept counts as
      // accepting the original offer
      bool taken = false;
      for (std::int64_t k = 1; k < r && i < decisions.size() && !taken; ++k) {
        taken = emit(offered, 1) == 1;
      }
      if (taken) {
        q = p;
        if (q < 1.0) p = q + step_size(l);
        continue;
      }
      rejected = true;
    }
    if (!rejected) break;
    for (std::int64_t k = 0; k < g(l) && i < decisions.size(); ++k) emit(q, 2);
    l += 1;
    if (q < 1.0) p = q + step_size(l);
  }
  return out;
}

// Bisection of [0, 1] against decisions.
inline std::vector<double> binary_search_prices(const std::vector<int>& decisions) {
  std::vector<double> out;
  double a = 0.0, b = 1.0;
  for (int d : decisions) {
    const double mid = (a + b) / 2.0;
    out.push_back(mid);
    (d == 1 ? a : b) = mid;
  }
  return out;
}

inline std::vector<int> bits_of(std::uint64_t mask, std::int64_t n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = (mask >> k) & 1u;
  return out;
}

inline double geometric_surplus(const std::vector<double>& prices, const std::vector<int>& d,
                                double v, double gamma, std::int64_t first_round = 1) {
  double total = 0.0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (d[t]) total += std::pow(gamma, static_cast<double>(first_round + t) - 1.0) * (v - prices[t]);
  }
  return total;
}

inline double seller_regret(const std::vector<double>& prices, const std::vector<int>& d, double v) {
  double total = 0.0;
  for (std::size_t t = 0; t < d.size(); ++t) total += d[t] ? v - prices[t] : v;
  return total;
}

struct Best {
  double surplus = -std::numeric_limits<double>::infinity();
  std::vector<int> decisions;
  // Second-best surplus among strategies with a different outcome, to tell
  // whether the argmax is isolated.
  double runner_up = -std::numeric_limits<double>::infinity();
};

// Exhaustive search over the 2^n continuations of `prefix`.
inline Best enumerate(const std::function<std::vector<double>(const std::vector<int>&)>& prices_of,
                      const std::vector<int>& prefix, std::int64_t n, double v, double gamma) {
  Best best;
  const auto start = static_cast<std::int64_t>(prefix.size()) + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> path = prefix;
    const std::vector<int> tail = bits_of(mask, n);
    path.insert(path.end(), tail.begin(), tail.end());
    const std::vector<double> prices = prices_of(path);
    const std::vector<double> tail_prices(prices.begin() + static_cast<long>(prefix.size()),
                                          prices.end());
    const double s = geometric_surplus(tail_prices, tail, v, gamma, start);
    if (s > best.surplus) {
      best.runner_up = best.surplus;
      best.surplus = s;
      best.decisions = tail;
    } else if (s > best.runner_up) {
      best.runner_up = s;
    }
  }
  return best;
}

// Every continuation of `prefix` whose surplus is within `tol` of the best.
inline std::vector<std::vector<int>> optimal_set(
    const std::function<std::vector<double>(const std::vector<int>&)>& prices_of,
    const std::vector<int>& prefix, std::int64_t n, double v, double gamma, double tol = 1e-12) {
  std::vector<double> surplus(std::size_t{1} << n);
  double best = -std::numeric_limits<double>::infinity();
  const auto start = static_cast<std::int64_t>(prefix.size()) + 1;
  for (std::uint64_t mask = 0; mask < surplus.size(); ++mask) {
    std::vector<int> path = prefix;
    const std::vector<int> tail = bits_of(mask, n);
    path.insert(path.end(), tail.begin(), tail.end());
    const std::vector<double> prices = prices_of(path);
    const std::vector<double> tail_prices(prices.begin() + static_cast<long>(prefix.size()),
                                          prices.end());
    surplus[mask] = geometric_surplus(tail_prices, tail, v, gamma, start);
    best = std::max(best, surplus[mask]);
  }
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < surplus.size(); ++mask) {
    if (surplus[mask] >= best - tol) out.push_back(bits_of(mask, n));
  }
  return out;
}

// sum_{s >= t} w(s), summed term by term until the terms stop mattering.
inline double summed_tail(const std::function<double(std::int64_t)>& w, std::int64_t t,
                          std::int64_t cap = 100'000'000) {
  double total = 0.0;
  for (std::int64_t s = t; s < t + cap; ++s) {
    const double term = w(s);
    if (term == 0.0 || term < total * 1e-18) break;
    total += term;
  }
  return total;
}

}  // namespace oracle

#endif  // PRICING_LAB_TESTS_ORACLES_HPP
