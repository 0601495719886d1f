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

#ifndef PRICING_LAB_ALGORITHMS_HPP
#define PRICING_LAB_ALGORITHMS_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "pricing_lab/dyadic.hpp"
#include "pricing_lab/pricing.hpp"

namespace plab {

/// Largest phase index whose exploitation length 2^{2^l} fits in 64 bits.
inline constexpr int kMaxPhase = 5;

struct PhaseParams {
  int l = 0;
  Price epsilon;          // 2^{-2^l}
  std::int64_t n = 0;     // 2^{2^{l-1}}, zero for l = 0
};

/// Throws Overflow for l > kMaxPhase.
PhaseParams exploration_params(int l);

/// g(l) = 2^{2^l}.
std::int64_t default_exploit_rate(int l);
/// g(l) = max(2^{2^l}, ceil(G)).
std::int64_t preprrfes_exploit_rate(int l, double big_g);

struct ExploitRate {
  std::string policy = "default";  // "default" or "preprrfes:<G>"
  std::function<std::int64_t(int)> rate = default_exploit_rate;

  static ExploitRate standard();
  static ExploitRate with_floor(double big_g);
};

struct PrrfesParams {
  std::int64_t r = 1;
  ExploitRate exploit = ExploitRate::standard();
};

/// State: prices {q, p}; counters {l, mode, remaining} with mode 0 explore,
/// 1 penalization, 2 exploitation.
PricingMachine make_prrfes(const PrrfesParams& params);
/// Same control flow, every round offers the carried price q.
PricingMachine make_preprrfes(const PrrfesParams& params);
/// Bisection of [a, b] = [0, 1]; state prices {a, b}.
PricingMachine make_binary_search();

/// Builds "prrfes", "preprrfes", "binary-search", "constant:<p>" and
/// "pre:<q>:<name>" machines. `params` applies to the PRRFES family.
PricingMachine make_machine(const std::string& name, const PrrfesParams& params = {});

}  // namespace plab

#endif  // PRICING_LAB_ALGORITHMS_HPP
