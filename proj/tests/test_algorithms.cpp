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

#include <functional>

#include "oracles.hpp"
#include "pricing_lab/algorithms.hpp"
#include "pricing_lab/errors.hpp"

using namespace plab;

namespace {

std::vector<double> as_doubles(const std::vector<Price>& prices) {
  std::vector<double> out;
  for (const Price& p : prices) out.push_back(p.to_double());
  return out;
}

DecisionPath all(Decision d, std::size_t n) { return DecisionPath(n, d); }

}  // namespace

TEST_CASE("exploration parameters") {
  CHECK(exploration_params(0).epsilon == Price::power_of_half(1));
  CHECK(exploration_params(2).epsilon == Price::power_of_half(4));
  CHECK(exploration_params(2).n == 4);
  CHECK(exploration_params(4).epsilon == Price::power_of_half(16));
  CHECK(exploration_params(4).n == 256);
  for (int l = 1; l <= kMaxPhase; ++l) {
    const PhaseParams now = exploration_params(l);
    const PhaseParams before = exploration_params(l - 1);
    CHECK(now.epsilon.to_double() == before.epsilon.to_double() * before.epsilon.to_double());
    CHECK(static_cast<double>(now.n) * before.epsilon.to_double() == 1.0);
  }
  CHECK_THROWS_AS(exploration_params(kMaxPhase + 1), Overflow);
}

TEST_CASE("exploitation rates") {
  CHECK(default_exploit_rate(0) == 2);
  CHECK(default_exploit_rate(3) == 256);
  CHECK(preprrfes_exploit_rate(0, 12.16) == 13);
  CHECK(preprrfes_exploit_rate(4, 12.16) == 65536);
  CHECK(ExploitRate::with_floor(12.16).policy == "preprrfes:12.16");
}

TEST_CASE("PRRFES traces") {
  const PricingMachine m = make_prrfes({2, ExploitRate::standard()});
  CHECK(m.offer(m.initial_state()) == Price::power_of_half(1));
  CHECK(as_doubles(price_path(m, all(Decision::kAccept, 6))) ==
        std::vector<double>{0.5, 1, 1, 1, 1, 1});
  const PricingMachine r3 = make_prrfes({3, ExploitRate::standard()});
  // Reject 1/2 three times, exploit 0 twice, then phase 1 steps by 1/4.
  CHECK(as_doubles(price_path(r3, parse_bits("0000011"))) ==
        std::vector<double>{0.5, 0.5, 0.5, 0, 0, 0.25, 0.5});
  // An accept inside the penalty counts as accepting the offer.
  CHECK(as_doubles(price_path(r3, parse_bits("0011"))) == std::vector<double>{0.5, 0.5, 0.5, 1});
}

TEST_CASE("prePRRFES traces") {
  const PricingMachine m = make_preprrfes({2, ExploitRate::standard()});
  CHECK(m.offer(m.initial_state()) == Price::integer(0));
  CHECK(as_doubles(price_path(m, all(Decision::kAccept, 5))) ==
        std::vector<double>{0, 0.5, 1, 1, 1});
}

TEST_CASE("exploration offers sit on the phase grid") {
  const PricingMachine m = make_prrfes({2, ExploitRate::standard()});
  const PricingMachine pre = make_preprrfes({2, ExploitRate::standard()});
  std::function<void(const DecisionPath&)> visit = [&](const DecisionPath& path) {
    const PricingState s = m.state_after(path);
    if (s.counters[1] == 0) {
      const Price eps = exploration_params(static_cast<int>(s.counters[0])).epsilon;
      const Price gap = m.offer(s) - s.prices[0];
      // k eps with k >= 1, or the frozen top price
      CHECK((gap > Price() || s.prices[0] == Price::integer(1)));
      CHECK((gap.exponent() <= eps.exponent()));
      const PricingState ps = pre.state_after(path);
      CHECK(pre.offer(ps) == ps.prices[0]);
    }
    if (path.size() == 12) return;
    for (Decision d : {Decision::kReject, Decision::kAccept}) {
      DecisionPath next = path;
      next.push_back(d);
      visit(next);
    }
  };
  visit({});
}

TEST_CASE("exploitation rounds ignore the buyer") {
  const PricingMachine m = make_prrfes({3, ExploitRate::standard()});
  PricingState s = m.state_after(parse_bits("000"));
  REQUIRE(s.counters[1] == 2);
  while (s.counters[1] == 2) {
    CHECK(m.step(s, Decision::kAccept) == m.step(s, Decision::kReject));
    s = m.step(s, Decision::kAccept);
  }
}

TEST_CASE("penalization repeats the price with equivalent accept subtrees") {
  for (std::int64_t r : {2, 3, 5}) {
    const PricingMachine m = make_prrfes({r, ExploitRate::standard()});
    // The root, after one accept, and at the start of phase 1 after 1 was refused.
    const std::string refused = "1" + std::string(static_cast<std::size_t>(r), '0') + "00";
    for (const std::string& prefix : {std::string(), std::string("1"), refused}) {
      const DecisionPath base = parse_bits(prefix);
      const PricingState first = m.state_after(base);
      REQUIRE(first.counters[1] == 0);
      const PricingState first_yes = m.step(first, Decision::kAccept);
      DecisionPath path = base;
      for (std::int64_t k = 1; k < r; ++k) {
        path.push_back(Decision::kReject);
        const PricingState repeat = m.state_after(path);
        CHECK(m.offer(repeat) == m.offer(first));
        CHECK(subtrees_equivalent(m, m.step(repeat, Decision::kAccept), m, first_yes, 8));
      }
    }
  }
}

TEST_CASE("machines by name") {
  CHECK(make_machine("prrfes").name() == "prrfes");
  CHECK(make_machine("preprrfes").name() == "preprrfes");
  CHECK(make_machine("binary-search").name() == "binary-search");
  CHECK_THROWS(make_machine("nope"));
  CHECK_THROWS_AS(make_prrfes({0, ExploitRate::standard()}), PreconditionViolated);
}

TEST_CASE("binary search") {
  const PricingMachine m = make_binary_search();
  CHECK(m.offer(m.state_after(parse_bits("00"))) == Price::parse("1/8"));
  CHECK(m.offer(m.state_after(parse_bits("10"))) == Price::parse("5/8"));
  const auto prices = as_doubles(price_path(m, parse_bits("000")));
  CHECK(prices[2] < prices[1]);
  CHECK(prices[1] < prices[0]);
}
