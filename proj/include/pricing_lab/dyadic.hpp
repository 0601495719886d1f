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

#ifndef PRICING_LAB_DYADIC_HPP
#define PRICING_LAB_DYADIC_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace plab {

/// Exact dyadic rational numerator / 2^exponent.
///
/// Stored canonically: the numerator is odd, or it is zero with exponent 0.
/// Binary search reaches denominators of 2^T, so the numerator is an
/// arbitrary-precision integer; all built-in machines stay in [0, 1].
class Price {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Price() = default;
  Price(Integer numerator, std::int64_t exponent);

  static Price integer(std::int64_t value) { return Price(Integer(value), 0); }
  /// 2^-exponent.
  static Price power_of_half(std::int64_t exponent);
  /// Every finite double is dyadic; the conversion is exact.
  static Price from_double(double value);
  /// Accepts "a/2^k"-style fractions ("3/4", "5/8"), integers and decimals
  /// that are exactly representable as doubles ("0.5").
  static Price parse(std::string_view text);

  const Integer& numerator() const { return numerator_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }

  double to_double() const;
  std::string to_string() const;

  friend Price operator+(const Price& a, const Price& b);
  friend Price operator-(const Price& a, const Price& b);
  Price& operator+=(const Price& other) { return *this = *this + other; }
  Price& operator-=(const Price& other) { return *this = *this - other; }
  /// Exact halving, used by bisection.
  Price half() const { return Price(numerator_, exponent_ + 1); }

  friend bool operator==(const Price& a, const Price& b) = default;
  friend std::strong_ordering operator<=>(const Price& a, const Price& b);

  std::size_t hash() const;

 private:
  void canonicalize();

  Integer numerator_{0};
  std::int64_t exponent_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Price& price);

inline Price min(const Price& a, const Price& b) { return b < a ? b : a; }
inline Price max(const Price& a, const Price& b) { return a < b ? b : a; }

}  // namespace plab

#endif  // PRICING_LAB_DYADIC_HPP
