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


#include "pricing_lab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "pricing_lab/algorithms.hpp"
#include "pricing_lab/bounds.hpp"
#include "pricing_lab/buyer.hpp"
#include "pricing_lab/discounts.hpp"
#include "pricing_lab/errors.hpp"
#include "pricing_lab/harness.hpp"
#include "pricing_lab/numeric.hpp"
#include "pricing_lab/pricing.hpp"
#include "pricing_lab/regret.hpp"

namespace plab {

namespace {

class Report {
 public:
  void add(std::string name, bool pass, std::string detail) {
    checks_.push_back({std::move(name), pass, std::move(detail)});
  }
  std::vector<VerifyCheck>& checks() { return checks_; }

 private:
  std::vector<VerifyCheck> checks_;
};

std::string fmt(double x) { return format_real(x); }

std::string verdict(const CheckResult& r) {
  std::string text = r.holds ? "true" : "false";
  if (r.witness) text += " witness=" + (r.witness->empty() ? std::string("root") : to_bits(*r.witness));
  return text + " depth=" + std::to_string(r.depth);
}

PrrfesParams prrfes_params(std::int64_t r, std::optional<double> big_g = std::nullopt) {
  PrrfesParams params;
  params.r = r;
  if (big_g) params.exploit = ExploitRate::with_floor(*big_g);
  return params;
}

// Layout of PRRFES-family states: prices {q, p}, counters {l, mode, remaining}.
const Price& carried_q(const PricingState& s) { return s.prices[0]; }
const Price& next_p(const PricingState& s) { return s.prices[1]; }
int phase_of(const PricingState& s) { return static_cast<int>(s.counters[0]); }
bool exploring(const PricingState& s) { return s.counters[1] == 0; }

// ---------------------------------------------------------------- constants

void constants_suite(Report& report) {
  const double gammas[] = {0.05, 0.25, 0.75, 0.95, 0.99};
  const double kappa_table[] = {0.137, 0.255, 0.734, 1.815, 3.706};
  const double reduction_table[] = {33.2, 22.9, 1.5, 2.8, 6.3};
  for (int i = 0; i < 5; ++i) {
    const double g = gammas[i];
    const FactorImprovement f = factor_improvement(g);
    report.add("kappa0.gamma=" + fmt(g), std::abs(f.kappa0 - kappa_table[i]) <= 5e-4,
               "kappa0=" + fmt(f.kappa0) + " expected=" + fmt(kappa_table[i]));
    report.add("factor_reduction.gamma=" + fmt(g),
               std::abs(f.reduction_percent - reduction_table[i]) <= 0.1,
               "percent=" + fmt(f.reduction_percent) + " expected=" + fmt(reduction_table[i]));
    const double k = f.kappa0;
    const double residual = std::abs(k * (k + 1) * (k + 2) - 1.0 / std::log(1.0 / g));
    report.add("kappa0_root.gamma=" + fmt(g), residual <= 1e-7, "residual=" + fmt(residual));
  }

  struct Rounds {
    double gamma;
    std::int64_t at_kappa_one;
    std::int64_t minimum;
  };
  for (const Rounds& row : {Rounds{0.75, 8, 5}, Rounds{0.95, 72, 59}}) {
    const std::int64_t r1 = r_for_kappa_geometric(row.gamma, 1.0);
    const std::int64_t rmin = min_penalization_rounds(row.gamma);
    report.add("penalization_rounds.gamma=" + fmt(row.gamma),
               r1 == row.at_kappa_one && rmin == row.minimum,
               "kappa1=" + std::to_string(r1) + " min=" + std::to_string(rmin));
  }

  // Closed-form zeta against summed tails wherever the tail condition holds.
  // Where gamma_t equals the tail both forms divide by zero and truncation
  // alone decides the sign, so those pairs are counted apart.
  std::int64_t compared = 0;
  std::int64_t singular = 0;
  double worst = 0.0;
  bool defined_agree = true;
  for (int step = 0; step <= 13; ++step) {
    const double g = 0.3 + 0.05 * step;
    const DiscountSequence seq = DiscountSequence::geometric(g);
    for (std::int64_t r = 1; r <= 80; ++r) {
      if (std::abs(1.0 - g - std::pow(g, static_cast<double>(r))) <= 1e-9) {
        singular += 200;
        continue;
      }
      for (std::int64_t t = 1; t <= 200; ++t) {
        std::optional<double> closed;
        std::optional<double> summed;
        try {
          closed = zeta(seq, r, t);
        } catch (const ConditionViolated&) {
        }
        try {
          summed = zeta_numeric(seq, r, t);
        } catch (const ConditionViolated&) {
        }
        if (closed.has_value() != summed.has_value()) {
          defined_agree = false;
          continue;
        }
        if (!closed) continue;
        ++compared;
        worst = std::max(worst, std::abs(*closed - *summed) / std::max(1.0, std::abs(*closed)));
      }
    }
  }
  report.add("zeta_closed_vs_numeric", defined_agree && worst <= 1e-10,
             "pairs=" + std::to_string(compared) + " singular=" + std::to_string(singular) +
                 " worst_rel=" + fmt(worst));

  const DiscountSequence tele = DiscountSequence::telescoping();
  std::int64_t refuted = 0;
  std::string missing;
  for (std::int64_t r = 1; r <= 64; ++r) {
    bool found = false;
    for (std::int64_t t = 1; t <= 2 * r + 2 && !found; ++t) {
      found = tele.gamma_at(t) <= tele.tail_sum(t + r);
    }
    if (found) {
      ++refuted;
    } else {
      missing += " r=" + std::to_string(r);
    }
  }
  report.add("telescoping_no_uniform_r", refuted == 64,
             "refuted=" + std::to_string(refuted) + "/64" + missing);
}

// -------------------------------------------------------------- consistency

void consistency_suite(Report& report) {
  constexpr int kDepth = 12;
  for (std::int64_t r : {2, 4}) {
    const PricingMachine prrfes = make_prrfes(prrfes_params(r));
    const PricingMachine pre = make_preprrfes(prrfes_params(r));
    const std::string tag = ".r=" + std::to_string(r);

    const CheckResult cr = check_right_consistent(prrfes, kDepth);
    report.add("prrfes_in_CR" + tag, cr.holds, verdict(cr));
    const CheckResult wc = check_weakly_consistent(prrfes, kDepth);
    report.add("prrfes_not_WC" + tag, !wc.holds && wc.witness.has_value(), verdict(wc));

    const CheckResult pre_wc = check_weakly_consistent(pre, kDepth);
    report.add("preprrfes_in_WC" + tag, pre_wc.holds, verdict(pre_wc));
    const CheckResult pre_cr = check_right_consistent(pre, kDepth);
    report.add("preprrfes_in_CR" + tag, pre_cr.holds, verdict(pre_cr));
    const CheckResult mono = path_prices_nondecreasing(pre, kDepth);
    report.add("preprrfes_nondecreasing" + tag, mono.holds, verdict(mono));
  }
  const CheckResult bs = check_consistent(make_binary_search(), kDepth);
  report.add("binary_search_in_C", bs.holds, verdict(bs));

  for (std::int64_t r : {4, 11}) {
    const PricingMachine prrfes = make_prrfes(prrfes_params(r));
    const PricingMachine pre = make_preprrfes(prrfes_params(r));
    const CheckResult same = price_equivalent(pre_transform(Price(), prrfes), pre, 14);
    report.add("pre_of_prrfes_equals_preprrfes.r=" + std::to_string(r), same.holds,
               verdict(same));
  }
}

// ------------------------------------------------------------------ oracles

PricingMachine random_machine(std::mt19937_64& rng, std::string& label) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::int64_t> rounds(1, 4);
  switch (kind(rng)) {
    case 0: {
      const std::int64_t r = rounds(rng);
      label = "prrfes(r=" + std::to_string(r) + ")";
      return make_prrfes(prrfes_params(r));
    }
    case 1: {
      const std::int64_t r = rounds(rng);
      label = "preprrfes(r=" + std::to_string(r) + ")";
      return make_preprrfes(prrfes_params(r));
    }
    default:
      label = "binary-search";
      return make_binary_search();
  }
}

void oracles_suite(Report& report) {
  std::mt19937_64 rng(20260417);
  std::uniform_int_distribution<int> v_index(0, 20);
  std::uniform_int_distribution<int> gamma_index(0, 2);
  std::uniform_int_distribution<std::int64_t> horizon(1, 16);
  std::uniform_int_distribution<int> tie_index(0, 2);
  const double gammas[] = {0.7, 0.8, 0.9};
  const TieBreak ties[] = {TieBreak::kMaxRegret, TieBreak::kPreferReject, TieBreak::kPreferAccept};

  int agree = 0;
  std::string first_mismatch;
  for (int i = 0; i < 200; ++i) {
    std::string label;
    const PricingMachine m = random_machine(rng, label);
    const double v = v_index(rng) / 20.0;
    const double g = gammas[gamma_index(rng)];
    const std::int64_t t = horizon(rng);
    OracleOptions options;
    options.tie_break = ties[tie_index(rng)];
    const DiscountSequence seq = DiscountSequence::geometric(g);
    const OptimalPlay bf = optimal_play_bruteforce(m, v, seq, t, options);
    const OptimalPlay memo = optimal_play_memoized(m, v, seq, t, options);
    const bool ok = std::abs(bf.surplus - memo.surplus) <= 1e-12 &&
                    bf.seller_regret == memo.seller_regret;
    if (ok) {
      ++agree;
    } else if (first_mismatch.empty()) {
      first_mismatch = " first_mismatch=" + label + ",v=" + fmt(v) + ",gamma=" + fmt(g) +
                       ",T=" + std::to_string(t) + ",tie=" + to_string(options.tie_break);
    }
  }
  report.add("bruteforce_equals_memoized", agree == 200,
             "agree=" + std::to_string(agree) + "/200" + first_mismatch);

  // Brute force dominates every strategy on small trees.
  int dominated = 0;
  int instances = 0;
  for (const std::string name : {"prrfes", "preprrfes", "binary-search"}) {
    for (double v : {0.15, 0.5, 0.85}) {
      for (double g : {0.7, 0.9}) {
        const std::int64_t t = 10;
        const PricingMachine m = make_machine(name, prrfes_params(2));
        const DiscountSequence seq = DiscountSequence::geometric(g);
        const OptimalPlay best = optimal_play_bruteforce(m, v, seq, t);
        double top = -1.0;
        for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
          PlayRecord play;
          play.v = v;
          play.horizon = t;
          for (std::int64_t k = 0; k < t; ++k) {
            play.decisions.push_back((mask >> k) & 1u ? Decision::kAccept : Decision::kReject);
          }
          play.prices = price_path(m, play.decisions);
          top = std::max(top, surplus_of(play, seq));
        }
        ++instances;
        if (best.surplus >= top - 1e-12 && std::abs(best.surplus - top) <= 1e-12) ++dominated;
      }
    }
  }
  report.add("bruteforce_maximizes_enumeration", dominated == instances,
             std::to_string(dominated) + "/" + std::to_string(instances) + " at T=10");
}

// ------------------------------------------------------------- propositions

struct Visited {
  PricingState state;
  std::int64_t t;
  Decision decision;
};

std::vector<Visited> walk(const PricingMachine& m, const PlayRecord& play) {
  std::vector<Visited> out;
  PricingState s = m.initial_state();
  for (std::size_t i = 0; i < play.decisions.size(); ++i) {
    out.push_back({s, play.first_round + static_cast<std::int64_t>(i), play.decisions[i]});
    s = m.step(s, play.decisions[i]);
  }
  return out;
}

void propositions_suite(Report& report) {
  const double v_grid[] = {0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95};
  constexpr std::int64_t kHorizon = 16;

  {
    // Rejection at a penalization start bounds v - p by zeta (p - q).
    int instances = 0;
    int rejections = 0;
    std::string violation;
    for (double g : {0.5, 0.6, 0.7, 0.75, 0.8}) {
      const std::int64_t r = r_for_kappa_geometric(g, 1.0);
      const PricingMachine m = make_prrfes(prrfes_params(r));
      const DiscountSequence seq = DiscountSequence::geometric(g);
      for (double v : v_grid) {
        ++instances;
        const OptimalPlay opt = optimal_play_bruteforce(m, v, seq, kHorizon);
        for (const Visited& n : walk(m, opt.play)) {
          if (!exploring(n.state) || n.decision != Decision::kReject) continue;
          ++rejections;
          const double p = next_p(n.state).to_double();
          const double q = carried_q(n.state).to_double();
          const double z = zeta(seq, r, n.t);
          if (!(v - p < z * (p - q)) && violation.empty()) {
            violation = " violation=gamma:" + fmt(g) + ",v:" + fmt(v) + ",t:" + std::to_string(n.t);
          }
        }
      }
    }
    report.add("reject_bound_zeta", violation.empty(),
               "instances=" + std::to_string(instances) +
                   " rejections=" + std::to_string(rejections) + violation);
  }

  {
    // Same for prePRRFES with eta, measured from the price behind the offer.
    int instances = 0;
    int rejections = 0;
    std::string violation;
    const double kappa = 1.6;
    for (double g : {0.7, 0.75, 0.8, 0.85, 0.9}) {
      const std::int64_t r = ceil_snapped(r_gamma_kappa(g, kappa));
      const double big_g = g_gamma_kappa(g, kappa);
      const PricingMachine m = make_preprrfes(prrfes_params(r, big_g));
      const DiscountSequence seq = DiscountSequence::geometric(g);
      const double e = eta(g, r);
      for (double v : v_grid) {
        ++instances;
        const OptimalPlay opt = optimal_play_bruteforce(m, v, seq, kHorizon);
        for (const Visited& n : walk(m, opt.play)) {
          if (!exploring(n.state) || n.decision != Decision::kReject) continue;
          ++rejections;
          const double offered = carried_q(n.state).to_double();
          const double behind = next_p(n.state).to_double();
          if (!(v - behind < e * (behind - offered)) && violation.empty()) {
            violation = " violation=gamma:" + fmt(g) + ",v:" + fmt(v) + ",t:" + std::to_string(n.t);
          }
        }
      }
    }
    report.add("reject_bound_eta", violation.empty(),
               "instances=" + std::to_string(instances) +
                   " rejections=" + std::to_string(rejections) + violation);
  }

  {
    // Below every right-subtree price, the buyer waits out the penalty and
    // then takes every exploitation round.
    int instances = 0;
    int nodes = 0;
    std::string violation;
    constexpr std::int64_t kShortHorizon = 12;
    constexpr int kRootDepth = 4;
    for (double g : {0.7, 0.75, 0.8, 0.85, 0.9}) {
      const std::int64_t r = 2;
      const double big_g =
          static_cast<double>(next_integer_above(log_base(1.0 - (1.0 - g) / std::pow(g, r), g)));
      const PricingMachine m = make_preprrfes(prrfes_params(r, big_g));
      const DiscountSequence seq = DiscountSequence::geometric(g);
      for (double v : v_grid) {
        ++instances;
        std::function<void(const PricingState&, std::int64_t)> visit =
            [&](const PricingState& s, std::int64_t t) {
              if (exploring(s)) {
                const double q = carried_q(s).to_double();
                const double p = next_p(s).to_double();
                const std::int64_t exploit = preprrfes_exploit_rate(phase_of(s), big_g);
                if (q < v && v < p && t + r + exploit - 1 <= kShortHorizon) {
                  ++nodes;
                  const OptimalPlay opt =
                      optimal_play_bruteforce(m, v, seq, kShortHorizon, {}, Subgame{s, t});
                  bool ok = true;
                  for (std::int64_t k = 0; k < r + exploit; ++k) {
                    const Decision want = k < r ? Decision::kReject : Decision::kAccept;
                    ok = ok && opt.play.decisions[static_cast<std::size_t>(k)] == want;
                  }
                  if (!ok && violation.empty()) {
                    violation = " violation=gamma:" + fmt(g) + ",v:" + fmt(v) +
                                ",t:" + std::to_string(t) + ",play:" + to_bits(opt.play.decisions);
                  }
                }
              }
              if (t >= kRootDepth) return;
              visit(m.step(s, Decision::kReject), t + 1);
              visit(m.step(s, Decision::kAccept), t + 1);
            };
        visit(m.initial_state(), 1);
      }
    }
    report.add("exploitation_guarantee", violation.empty() && nodes > 0,
               "instances=" + std::to_string(instances) + " nodes=" + std::to_string(nodes) +
                   violation);
  }
}

// ------------------------------------------------------------ linear regret

void linear_regret_suite(Report& report) {
  const DiscountSequence half = DiscountSequence::geometric(0.5);
  const std::vector<std::int64_t> grid = {64, 128, 256, 512, 1024};
  const LinearRegretWitness w = check_linear_regret(make_binary_search(), half, grid);
  report.add("binary_search_epsilon", w.epsilon >= 1.0 / 48.0 - 1e-15,
             "epsilon=" + fmt(w.epsilon) + " v=" + fmt(w.v) + " t0=" + std::to_string(w.t0) +
                 " t1=" + std::to_string(w.t1) + " path=" + to_bits(w.path));
  std::string slopes;
  for (const SlopeRow& row : w.slopes) {
    slopes += " T" + std::to_string(row.horizon) + ":" + fmt(row.slope);
  }
  report.add("binary_search_linear_regret", w.all_hold(), "slopes" + slopes);

  bool refused = false;
  try {
    check_linear_regret(make_preprrfes(prrfes_params(2)), half, {64});
  } catch (const NoDoubleDecreaseFound&) {
    refused = true;
  }
  report.add("preprrfes_has_no_double_decrease", refused,
             refused ? "no-double-decrease-found" : "a witness was produced");

  // A myopic buyer against prePRRFES: once the offer passes v it never comes
  // back, and every later round costs the seller exactly v.
  const double v = 0.6;
  const std::int64_t horizon = 10000;
  const PlayRecord play = truthful_play(make_preprrfes(prrfes_params(2)), v, horizon);
  std::int64_t saturated = 0;
  for (std::size_t i = 0; i < play.prices.size(); ++i) {
    if (play.prices[i].to_double() > v) {
      saturated = static_cast<std::int64_t>(i) + 1;
      break;
    }
  }
  bool linear = saturated > 0;
  for (std::int64_t t = std::max<std::int64_t>(saturated, 1); linear && t <= horizon; ++t) {
    const auto i = static_cast<std::size_t>(t - 1);
    linear = play.prices[i].to_double() > v && play.decisions[i] == Decision::kReject;
  }
  report.add("truthful_vs_preprrfes_linear", linear,
             "saturates_at_t=" + std::to_string(saturated) + " T=" + std::to_string(horizon) +
                 " regret=" + fmt(regret_of(play)));
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"constants", "consistency", "oracles",
                                                 "propositions", "linear-regret"};
  return names;
}

std::vector<VerifyCheck> run_verify(const std::string& suite) {
  Report report;
  const auto wants = [&](const char* name) { return suite == "all" || suite == name; };
  bool known = suite == "all";
  for (const std::string& name : verify_suites()) known = known || suite == name;
  if (!known) throw ConfigError("unknown verify suite '" + suite + "'");
  if (wants("constants")) constants_suite(report);
  if (wants("consistency")) consistency_suite(report);
  if (wants("oracles")) oracles_suite(report);
  if (wants("propositions")) propositions_suite(report);
  if (wants("linear-regret")) linear_regret_suite(report);
  return std::move(report.checks());
}

int verify(const std::string& suite, std::ostream& out) {
  std::vector<VerifyCheck> checks;
  try {
    checks = run_verify(suite);
  } catch (const ConfigError& e) {
    out << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  bool all = true;
  for (const VerifyCheck& c : checks) {
    out << "CHECK " << c.name << (c.pass ? " PASS " : " FAIL ") << c.detail << '\n';
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

}  // namespace plab
