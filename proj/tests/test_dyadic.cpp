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

#include <unordered_set>

#include "pricing_lab/dyadic.hpp"
#include "pricing_lab/errors.hpp"

using plab::Price;

TEST_CASE("prices are stored in lowest terms") {
  const Price a(4, 3);  // 4/8
  CHECK(a.numerator() == 1);
  CHECK(a.exponent() == 1);
  CHECK(Price(0, 40).exponent() == 0);
  CHECK(Price(6, 2) == Price(3, 1));
  CHECK(Price(6, 2).hash() == Price(3, 1).hash());
}

TEST_CASE("arithmetic is exact") {
  const Price half = Price::power_of_half(1);
  const Price tiny = Price::power_of_half(64);
  CHECK((half + tiny) - half == tiny);
  CHECK(half.half() == Price::power_of_half(2));
  CHECK(Price::integer(1) - half == half);
  CHECK((Price::power_of_half(16) + Price::power_of_half(16)).to_string() == "1/32768");
}

TEST_CASE("ordering matches the reals") {
  CHECK(Price::parse("3/8") < Price::parse("1/2"));
  CHECK(Price::parse("5/8") > Price::parse("1/2"));
  CHECK(Price::power_of_half(100) > Price::integer(0));
  CHECK(Price::power_of_half(100) < Price::power_of_half(99));
  CHECK(Price(-1, 2) < Price::integer(0));
}

TEST_CASE("parsing and printing") {
  CHECK(Price::parse("0.75") == Price(3, 2));
  CHECK(Price::parse("5/8").to_double() == 0.625);
  CHECK(Price::parse("1") == Price::integer(1));
  CHECK(Price(3, 2).to_string() == "3/4");
  CHECK(Price(1, 100).to_string() == "1/2^100");
  CHECK_THROWS_AS(Price::parse("1/3"), plab::PreconditionViolated);
  CHECK_THROWS_AS(Price::parse("abc"), plab::PreconditionViolated);
}

TEST_CASE("doubles convert exactly") {
  for (double x : {0.0, 0.1, 0.3, 0.625, 1.0, 1e-300}) {
    CHECK(Price::from_double(x).to_double() == x);
  }
}

TEST_CASE("equal prices hash alike") {
  std::unordered_set<std::size_t> seen;
  for (int k = 1; k < 64; ++k) seen.insert(Price(k, 6).hash());
  CHECK(seen.size() == 63);
}
