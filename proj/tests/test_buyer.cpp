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
#include <random>

#include "oracles.hpp"
#include "pricing_lab/algorithms.hpp"
#include "pricing_lab/buyer.hpp"
#include "pricing_lab/errors.hpp"
#include "pricing_lab/regret.hpp"

using namespace plab;

namespace {

std::vector<int> ints(const DecisionPath& path) {
  std::vector<int> out;
  for (Decision d : path) out.push_back(d == Decision::kAccept ? 1 : 0);
  return out;
}

std::vector<double> reference_prices(const std::string& alg, std::int64_t r,
                                     const std::vector<int>& d) {
  if (alg == "binary-search") return oracle::binary_search_prices(d);
  std::vector<double> out;
  for (const oracle::Round& round :
       oracle::prrfes_rounds(r, oracle::default_rate, d, alg == "preprrfes")) {
    out.push_back(round.price);
  }
  return out;
}

}  // namespace

TEST_CASE("surplus of a play") {
  const DiscountSequence g9 = DiscountSequence::geometric(0.9);
  PlayRecord none{{Price::parse("1/2"), Price::parse("1/4")}, parse_bits("00"), 0.4, 2};
  CHECK(surplus_of(none, g9) == 0.0);
  PlayRecord one{{Price::from_double(0.3)}, parse_bits("1"), 0.5, 1};
  CHECK(surplus_of(one, DiscountSequence::geometric(0.3)) == doctest::Approx(0.2));
  PlayRecord bs{price_path(make_binary_search(), parse_bits("001")), parse_bits("001"), 0.4, 3};
  CHECK(surplus_of(bs, g9) == doctest::Approx(0.22275).epsilon(1e-14));
}

TEST_CASE("truthful play") {
  const PlayRecord bs = truthful_play(make_binary_search(), 0.4, 3);
  CHECK(to_bits(bs.decisions) == "011");
  CHECK(bs.prices[2] == Price::parse("3/8"));
  const PlayRecord pre = truthful_play(make_preprrfes({2, ExploitRate::standard()}), 0.6, 10);
  CHECK(to_bits(pre.decisions) == "1100000000");
  for (std::size_t t = 2; t < 10; ++t) CHECK(pre.prices[t] == Price::integer(1));
  const PlayRecord flat = truthful_play(make_constant(Price::from_double(0.3)), 0.3, 5);
  CHECK(to_bits(flat.decisions) == "11111");
  CHECK(is_locally_non_losing(bs));
}

TEST_CASE("local non-losing") {
  PlayRecord bad{{Price::parse("1/2")}, parse_bits("1"), 0.4, 1};
  CHECK_FALSE(is_locally_non_losing(bad));
}

TEST_CASE("brute force on hand-checked cases") {
  const DiscountSequence g9 = DiscountSequence::geometric(0.9);
  const OptimalPlay bs = optimal_play_bruteforce(make_binary_search(), 0.4, g9, 3);
  CHECK(bs.surplus == doctest::Approx(0.22275).epsilon(1e-14));
  CHECK(to_bits(bs.play.decisions) == "001");
  const OptimalPlay single = optimal_play_bruteforce(make_binary_search(), 0.7, g9, 1);
  CHECK(single.surplus == doctest::Approx(0.2));
  const OptimalPlay flat = optimal_play_bruteforce(make_constant(Price::parse("1/4")), 0.75, g9, 6);
  CHECK(to_bits(flat.play.decisions) == "111111");
  CHECK(flat.surplus == doctest::Approx(0.5 * (1 - std::pow(0.9, 6)) / 0.1).epsilon(1e-13));
  CHECK_THROWS_AS(optimal_play_bruteforce(make_binary_search(), 0.4, g9, 23), HorizonTooLarge);
}

TEST_CASE("brute force beats every enumerated strategy") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick_v(1, 19);
  for (const std::string alg : {"prrfes", "preprrfes", "binary-search"}) {
    for (double gamma : {0.6, 0.85}) {
      for (int k = 0; k < 3; ++k) {
        const double v = pick_v(rng) / 20.0;
        const std::int64_t r = 3;
        const PricingMachine m = make_machine(alg, {r, ExploitRate::standard()});
        const DiscountSequence seq = DiscountSequence::geometric(gamma);
        const std::int64_t horizon = 12;
        const OptimalPlay opt = optimal_play_bruteforce(m, v, seq, horizon);
        const oracle::Best best = oracle::enumerate(
            [&](const std::vector<int>& d) { return reference_prices(alg, r, d); }, {}, horizon, v,
            gamma);
        CHECK(opt.surplus == doctest::Approx(best.surplus).epsilon(1e-12));
        CHECK(opt.surplus >= best.surplus - 1e-12);
        const std::vector<double> ref = reference_prices(alg, r, ints(opt.play.decisions));
        CHECK(oracle::seller_regret(ref, ints(opt.play.decisions), v) ==
              doctest::Approx(opt.seller_regret).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("memoized and brute force agree") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick_v(0, 20);
  std::uniform_int_distribution<int> pick_t(1, 14);
  std::uniform_int_distribution<int> pick_r(1, 6);
  const char* algs[] = {"prrfes", "preprrfes", "binary-search"};
  for (int k = 0; k < 60; ++k) {
    const std::string alg = algs[k % 3];
    const double gamma = 0.7 + 0.1 * (k % 3 == 0 ? 0 : k % 3);
    const double v = pick_v(rng) / 20.0;
    const std::int64_t horizon = pick_t(rng);
    const PricingMachine m = make_machine(alg, {pick_r(rng), ExploitRate::standard()});
    const DiscountSequence seq = DiscountSequence::geometric(gamma);
    for (TieBreak tb : {TieBreak::kMaxRegret, TieBreak::kPreferReject, TieBreak::kPreferAccept}) {
      OracleOptions opts;
      opts.tie_break = tb;
      const OptimalPlay a = optimal_play_bruteforce(m, v, seq, horizon, opts);
      const OptimalPlay b = optimal_play_memoized(m, v, seq, horizon, opts);
      CHECK(std::abs(a.surplus - b.surplus) <= 1e-12);
      CHECK(a.seller_regret == b.seller_regret);
      CHECK(std::abs(surplus_of(b.play, seq) - b.surplus) <= 1e-12);
    }
  }
}

TEST_CASE("memoized oracle on a non-geometric discount") {
  const DiscountSequence tele = DiscountSequence::telescoping();
  for (double v : {0.2, 0.55, 0.9}) {
    const PricingMachine m = make_prrfes({3, ExploitRate::standard()});
    const OptimalPlay a = optimal_play_bruteforce(m, v, tele, 14);
    const OptimalPlay b = optimal_play_memoized(m, v, tele, 14);
    CHECK(std::abs(a.surplus - b.surplus) <= 1e-12);
    CHECK(a.seller_regret == b.seller_regret);
  }
}

TEST_CASE("tie-breaking on an indifferent buyer") {
  // Price equals value, so every strategy has zero surplus.
  const PricingMachine m = make_constant(Price::parse("1/2"));
  const DiscountSequence seq = DiscountSequence::geometric(0.8);
  OracleOptions opts;
  CHECK(to_bits(optimal_play_memoized(m, 0.5, seq, 4, opts).play.decisions) == "0000");
  opts.tie_break = TieBreak::kPreferReject;
  CHECK(to_bits(optimal_play_memoized(m, 0.5, seq, 4, opts).play.decisions) == "0000");
  opts.tie_break = TieBreak::kPreferAccept;
  CHECK(to_bits(optimal_play_memoized(m, 0.5, seq, 4, opts).play.decisions) == "1111");
  CHECK(to_bits(optimal_play_bruteforce(m, 0.5, seq, 4, opts).play.decisions) == "1111");
  CHECK(parse_tie_break(to_string(TieBreak::kPreferAccept)) == TieBreak::kPreferAccept);
}

TEST_CASE("memo key budget") {
  OracleOptions opts;
  opts.max_keys = 10;
  CHECK_THROWS_AS(optimal_play_memoized(make_binary_search(), 0.3,
                                        DiscountSequence::geometric(0.9), 20, opts),
                  MemoryBudgetExceeded);
}

TEST_CASE("subgames start from a given state and round") {
  const PricingMachine m = make_prrfes({2, ExploitRate::standard()});
  const DiscountSequence seq = DiscountSequence::geometric(0.8);
  const DecisionPath prefix = parse_bits("10");
  const Subgame start{m.state_after(prefix), 3};
  const OptimalPlay a = optimal_play_bruteforce(m, 0.8, seq, 10, {}, start);
  const OptimalPlay b = optimal_play_memoized(m, 0.8, seq, 10, {}, start);
  CHECK(a.play.decisions.size() == 8);
  CHECK(std::abs(a.surplus - b.surplus) <= 1e-12);
  const oracle::Best best = oracle::enumerate(
      [](const std::vector<int>& d) { return reference_prices("prrfes", 2, d); }, {1, 0}, 8, 0.8,
      0.8);
  CHECK(a.surplus == doctest::Approx(best.surplus).epsilon(1e-12));
}

TEST_CASE("optimal play against PRRFES never takes a loss") {
  for (double gamma : {0.6, 0.8}) {
    for (double v : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const OptimalPlay opt = optimal_play_bruteforce(
          make_prrfes({4, ExploitRate::standard()}), v, DiscountSequence::geometric(gamma), 16);
      CHECK(is_locally_non_losing(opt.play));
    }
  }
}
