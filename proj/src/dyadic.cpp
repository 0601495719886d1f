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

#include "pricing_lab/dyadic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "pricing_lab/errors.hpp"
#include "pricing_lab/numeric.hpp"

namespace plab {

namespace {

using Integer = Price::Integer;

// Brings a and b to the common exponent max(ea, eb).
std::pair<Integer, Integer> align(const Price& a, const Price& b,
                                  std::int64_t& exponent) {
  exponent = std::max(a.exponent(), b.exponent());
  Integer na = a.numerator() << static_cast<unsigned>(exponent - a.exponent());
  Integer nb = b.numerator() << static_cast<unsigned>(exponent - b.exponent());
  return {std::move(na), std::move(nb)};
}

}  // namespace

Price::Price(Integer numerator, std::int64_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  if (exponent_ < 0) {
    numerator_ <<= static_cast<unsigned>(-exponent_);
    exponent_ = 0;
  }
  canonicalize();
}

Price Price::power_of_half(std::int64_t exponent) {
  if (exponent < 0) throw PreconditionViolated("negative dyadic exponent");
  return Price(Integer(1), exponent);
}

Price Price::from_double(double value) {
  if (!std::isfinite(value)) throw PreconditionViolated("non-finite price");
  if (value == 0.0) return Price();
  int exp2 = 0;
  const double mantissa = std::frexp(value, &exp2);  // value = m * 2^exp2
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  return Price(Integer(scaled), 53 - exp2);
}

Price Price::parse(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return from_double(std::stod(std::string(text)));
    }
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    if (den <= 0) throw PreconditionViolated("non-positive denominator");
    const auto bits = boost::multiprecision::msb(den);
    if (den != (Integer(1) << bits)) {
      throw PreconditionViolated("denominator of '" + std::string(text) +
                                 "' is not a power of two");
    }
    return Price(std::move(num), static_cast<std::int64_t>(bits));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw PreconditionViolated("cannot parse price '" + std::string(text) + "'");
  }
}

void Price::canonicalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  const auto zeros = static_cast<std::int64_t>(
      boost::multiprecision::lsb(boost::multiprecision::abs(numerator_)));
  const auto shift = std::min(zeros, exponent_);
  if (shift > 0) {
    numerator_ >>= static_cast<unsigned>(shift);
    exponent_ -= shift;
  }
}

double Price::to_double() const {
  if (numerator_ == 0) return 0.0;
  const Integer magnitude = boost::multiprecision::abs(numerator_);
  const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(magnitude)) + 1;
  std::int64_t drop = bits > 62 ? bits - 62 : 0;
  const auto top = static_cast<std::int64_t>(magnitude >> static_cast<unsigned>(drop));
  double value = std::ldexp(static_cast<double>(top),
                            static_cast<int>(std::clamp<std::int64_t>(
                                drop - exponent_, std::numeric_limits<int>::min() / 2,
                                std::numeric_limits<int>::max() / 2)));
  return numerator_ < 0 ? -value : value;
}

std::string Price::to_string() const {
  if (exponent_ == 0) return numerator_.str();
  // Short denominators print as fractions; deep ones as a power of two.
  if (exponent_ <= 62) {
    return numerator_.str() + "/" + (Integer(1) << static_cast<unsigned>(exponent_)).str();
  }
  return numerator_.str() + "/2^" + std::to_string(exponent_);
}

Price operator+(const Price& a, const Price& b) {
  std::int64_t exponent = 0;
  auto [na, nb] = align(a, b, exponent);
  return Price(na + nb, exponent);
}

Price operator-(const Price& a, const Price& b) {
  std::int64_t exponent = 0;
  auto [na, nb] = align(a, b, exponent);
  return Price(na - nb, exponent);
}

std::strong_ordering operator<=>(const Price& a, const Price& b) {
  if (a.exponent_ == b.exponent_) return a.numerator_.compare(b.numerator_) <=> 0;
  std::int64_t exponent = 0;
  auto [na, nb] = align(a, b, exponent);
  return na.compare(nb) <=> 0;
}

std::size_t Price::hash() const {
  return hash_mix(std::hash<Integer>{}(numerator_), static_cast<std::uint64_t>(exponent_));
}

std::ostream& operator<<(std::ostream& os, const Price& price) {
  return os << price.to_string();
}

}  // namespace plab
