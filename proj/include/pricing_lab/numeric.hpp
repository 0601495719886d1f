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

#ifndef PRICING_LAB_NUMERIC_HPP
#define PRICING_LAB_NUMERIC_HPP

#include <cmath>
#include <cstdint>

namespace plab {

// Values within this distance of an integer are treated as that integer when
// rounding, so exact powers such as log_{1/2}(1/2) do not pick up a spurious +1.
inline constexpr double kIntegerSnap = 1e-12;

inline double log_base(double x, double base) { return std::log(x) / std::log(base); }

inline std::int64_t ceil_snapped(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= kIntegerSnap) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(x));
}

/// Smallest integer strictly greater than x.
inline std::int64_t next_integer_above(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= kIntegerSnap) return static_cast<std::int64_t>(nearest) + 1;
  return static_cast<std::int64_t>(std::floor(x)) + 1;
}

/// Folds `value` into `seed` with a full 64-bit avalanche.
inline std::uint64_t hash_mix(std::uint64_t seed, std::uint64_t value) {
  std::uint64_t z = seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace plab

#endif  // PRICING_LAB_NUMERIC_HPP
