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


#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pricing_lab/bounds.hpp"
#include "pricing_lab/errors.hpp"
#include "pricing_lab/harness.hpp"
#include "pricing_lab/pricing.hpp"
#include "pricing_lab/verify.hpp"

namespace {

using nlohmann::json;
using plab::format_real;

// Flags shared by the commands that build a machine.
struct MachineFlags {
  std::string alg = "prrfes";
  std::string r;
  std::string exploit;
  std::optional<double> kappa;
  std::optional<double> gamma;
  std::string discount;

  void attach(CLI::App* cmd, bool with_alg_default) {
    auto* a = cmd->add_option("--alg", alg, "prrfes, preprrfes, binary-search, constant:<p>, pre:<q>:<alg>");
    if (!with_alg_default) a->required();
    cmd->add_option("--r", r, "penalization rounds, or auto");
    cmd->add_option("--exploit", exploit, "default, preprrfes:<G> or preprrfes:auto");
    cmd->add_option("--kappa", kappa, "target rejection constant");
    cmd->add_option("--gamma", gamma, "geometric discount rate");
    cmd->add_option("--discount", discount, "geometric or telescoping");
  }

  void fill(json& doc, bool alg_given) const {
    if (alg_given) doc["alg"] = alg;
    if (!r.empty()) {
      if (r == "auto") {
        doc["r"] = "auto";
      } else {
        try {
          doc["r"] = std::stoll(r);
        } catch (const std::exception&) {
          throw plab::ConfigError("--r must be an integer or auto");
        }
      }
    }
    if (!exploit.empty()) doc["exploit"] = exploit;
    if (kappa) doc["kappa"] = *kappa;
    if (!discount.empty() || gamma) {
      json d = json::object();
      d["kind"] = discount.empty() ? "geometric" : discount;
      if (gamma) d["gamma"] = *gamma;
      doc["discount"] = d;
    }
  }
};

int simulate(const std::string& config_path, const json& overrides) {
  const plab::ExperimentConfig config = plab::load_config(config_path, overrides);
  return plab::run(config, std::cout, std::cerr);
}

int trace(const MachineFlags& flags, const std::string& buyer, double v, std::int64_t horizon,
          const std::string& oracle, const std::string& tie_break) {
  json doc = json::object();
  flags.fill(doc, true);
  doc["v"] = json::array({v});
  doc["T"] = json::array({horizon});
  doc["bound"] = "off";
  if (!oracle.empty()) doc["oracle"] = oracle;
  if (!tie_break.empty()) doc["tie_break"] = tie_break;
  const plab::ExperimentConfig config = plab::parse_config(doc);
  const plab::Experiment e = plab::resolve(config);
  plab::PlayRecord play;
  if (buyer == "truthful") {
    play = plab::truthful_play(e.machine, v, horizon);
  } else {
    play = plab::solve_optimal_play(e.machine, v, e.discount, horizon, config.oracle,
                                    e.oracle_options)
               .play;
  }
  std::cout << "# alg=" << config.alg << " buyer=" << buyer << " v=" << format_real(v)
            << " discount=" << e.discount.name() << " T=" << horizon << '\n';
  std::cout << plab::format_trace(plab::trace_rows(play, e.discount));
  std::cout << "# surplus=" << format_real(plab::surplus_of(play, e.discount))
            << " regret=" << format_real(plab::regret_of(play)) << '\n';
  return plab::kExitOk;
}

void row(bool csv, const std::string& name, const std::string& value) {
  if (csv) {
    std::cout << name << ',' << value << '\n';
  } else {
    std::printf("%-22s %s\n", name.c_str(), value.c_str());
  }
}

int bounds(double gamma, double kappa, bool csv) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw plab::ConfigError("--gamma must lie in (0, 1)");
  if (!(kappa > 0.0)) throw plab::ConfigError("--kappa must be positive");
  const plab::BoundParams b = plab::bound_params(gamma, kappa);
  auto opt = [](const std::optional<double>& x) { return x ? format_real(*x) : "NA"; };
  if (csv) std::cout << "name,value\n";
  row(csv, "gamma", format_real(b.gamma));
  row(csv, "kappa", format_real(b.kappa));
  row(csv, "min_rounds", std::to_string(b.min_rounds));
  row(csv, "r_for_kappa", std::to_string(b.r_for_kappa));
  row(csv, "zeta_at_r_for_kappa", opt(b.zeta_at_r_for_kappa));
  row(csv, "c_factor_v1", format_real(plab::c_factor(b.r_for_kappa, kappa, 1.0)));
  row(csv, "golden_threshold", format_real(plab::golden_rate_threshold()));
  row(csv, "kappa_min_pre", opt(b.kappa_min));
  row(csv, "r_gamma_kappa", opt(b.r_gk));
  row(csv, "r_pre", b.r_pre ? std::to_string(*b.r_pre) : "NA");
  row(csv, "G_gamma_kappa", opt(b.g_gk));
  row(csv, "eta_at_r_pre", opt(b.eta_at_r_pre));
  if (!b.pre_note.empty()) row(csv, "pre_note", b.pre_note);
  return plab::kExitOk;
}

int optimize_kappa(double gamma, bool csv) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw plab::ConfigError("--gamma must lie in (0, 1)");
  const plab::FactorImprovement f = plab::factor_improvement(gamma);
  if (csv) std::cout << "name,value\n";
  row(csv, "gamma", format_real(gamma));
  row(csv, "kappa0", format_real(f.kappa0));
  row(csv, "f_kappa1", format_real(f.f_one));
  row(csv, "f_kappa0", format_real(f.f_kappa0));
  row(csv, "reduction_percent", format_real(f.reduction_percent));
  return plab::kExitOk;
}

int consistency(const MachineFlags& flags, int depth, int equiv_depth) {
  if (depth < 1) throw plab::ConfigError("--depth must be >= 1");
  json doc = json::object();
  flags.fill(doc, true);
  doc["v"] = json::array({0.5});
  doc["T"] = json::array({1});
  doc["bound"] = "off";
  const plab::Experiment e = plab::resolve(plab::parse_config(doc));
  auto show = [&](const std::string& name, const plab::CheckResult& r) {
    std::printf("%-14s %-5s %s\n", name.c_str(), r.holds ? "true" : "false",
                r.witness ? (r.witness->empty() ? "root" : plab::to_bits(*r.witness).c_str())
                          : "-");
  };
  std::printf("# alg=%s depth=%d\n", flags.alg.c_str(), depth);
  std::printf("%-14s %-5s %s\n", "class", "holds", "witness");
  show("C", plab::check_consistent(e.machine, depth));
  show("WC", plab::check_weakly_consistent(e.machine, depth));
  show("RWC", plab::check_regular_weakly_consistent(e.machine, depth, equiv_depth));
  show("C_R", plab::check_right_consistent(e.machine, depth));
  show("nondecreasing", plab::path_prices_nondecreasing(e.machine, depth));
  return plab::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated posted-price auctions against a strategic buyer"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Solve a (v, T) grid and write the regret CSV");
  std::string config_path;
  MachineFlags sim_machine;
  std::string sim_v, sim_t, sim_oracle, sim_tie, sim_bound, sim_out, sim_plot;
  std::optional<double> sim_window;
  std::optional<int> sim_threads;
  std::optional<std::size_t> sim_keys;
  sim->add_option("--config", config_path, "JSON experiment config");
  sim_machine.attach(sim, true);
  sim->add_option("--v", sim_v, "valuations: a,b,c or linspace:a:b:n");
  sim->add_option("--T", sim_t, "horizons: a,b,c or pow2:lo:hi:step");
  sim->add_option("--oracle", sim_oracle, "bruteforce or memoized");
  sim->add_option("--tie-break", sim_tie, "max-regret, prefer-reject or prefer-accept");
  sim->add_option("--tie-window", sim_window, "surplus tie window");
  sim->add_option("--bound", sim_bound, "auto, on or off");
  sim->add_option("--out", sim_out, "CSV path (default stdout)");
  sim->add_option("--plot-data", sim_plot, "gnuplot data path");
  sim->add_option("--threads", sim_threads, "worker threads (0 = all cores)");
  sim->add_option("--max-keys", sim_keys, "memo key budget per cell");

  // trace
  auto* tr = app.add_subcommand("trace", "Print one play round by round");
  MachineFlags tr_machine;
  std::string tr_buyer = "strategic", tr_oracle, tr_tie;
  double tr_v = 0.5;
  std::int64_t tr_t = 16;
  tr_machine.attach(tr, false);
  tr->add_option("--buyer", tr_buyer, "truthful or strategic")
      ->check(CLI::IsMember({"truthful", "strategic"}));
  tr->add_option("--v", tr_v, "valuation")->required();
  tr->add_option("--T", tr_t, "horizon")->required();
  tr->add_option("--oracle", tr_oracle, "bruteforce or memoized");
  tr->add_option("--tie-break", tr_tie, "max-regret, prefer-reject or prefer-accept");

  // bounds
  auto* bd = app.add_subcommand("bounds", "Print the regret-bound constants");
  double bd_gamma = 0.8, bd_kappa = 1.0;
  bool bd_csv = false;
  bd->add_option("--gamma", bd_gamma, "geometric discount rate")->required();
  bd->add_option("--kappa", bd_kappa, "target rejection constant");
  bd->add_flag("--csv", bd_csv, "CSV output");

  // optimize-kappa
  auto* ok = app.add_subcommand("optimize-kappa", "Minimize the principal regret factor over kappa");
  double ok_gamma = 0.8;
  bool ok_csv = false;
  ok->add_option("--gamma", ok_gamma, "geometric discount rate")->required();
  ok->add_flag("--csv", ok_csv, "CSV output");

  // consistency
  auto* cs = app.add_subcommand("consistency", "Depth-bounded consistency class membership");
  MachineFlags cs_machine;
  int cs_depth = 12, cs_equiv = 6;
  cs_machine.attach(cs, false);
  cs->add_option("--depth", cs_depth, "tree depth");
  cs->add_option("--equiv-depth", cs_equiv, "subtree equivalence depth for RWC");

  // verify
  auto* vf = app.add_subcommand("verify", "Run a property suite");
  std::string vf_suite = "all";
  vf->add_option("suite", vf_suite, "constants, consistency, oracles, propositions, linear-regret, all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return plab::kExitConfigError;
  }

  try {
    if (*sim) {
      json overrides = json::object();
      sim_machine.fill(overrides, sim->count("--alg") > 0);
      if (!sim_v.empty()) overrides["v"] = plab::parse_v_flag(sim_v);
      if (!sim_t.empty()) overrides["T"] = plab::parse_t_flag(sim_t);
      if (!sim_oracle.empty()) overrides["oracle"] = sim_oracle;
      if (!sim_tie.empty()) overrides["tie_break"] = sim_tie;
      if (sim_window) overrides["tie_window"] = *sim_window;
      if (!sim_bound.empty()) overrides["bound"] = sim_bound;
      if (!sim_out.empty()) overrides["out"] = sim_out;
      if (!sim_plot.empty()) overrides["plot_data"] = sim_plot;
      if (sim_threads) overrides["threads"] = *sim_threads;
      if (sim_keys) overrides["max_keys"] = *sim_keys;
      return simulate(config_path, overrides);
    }
    if (*tr) return trace(tr_machine, tr_buyer, tr_v, tr_t, tr_oracle, tr_tie);
    if (*bd) return bounds(bd_gamma, bd_kappa, bd_csv);
    if (*ok) return optimize_kappa(ok_gamma, ok_csv);
    if (*cs) return consistency(cs_machine, cs_depth, cs_equiv);
    if (*vf) return plab::verify(vf_suite, std::cout);
  } catch (const plab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return plab::kExitConfigError;
  } catch (const plab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return plab::kExitCellError;
  }
  return plab::kExitOk;
}
