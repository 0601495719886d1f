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


#include "pricing_lab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "pricing_lab/bounds.hpp"
#include "pricing_lab/errors.hpp"
#include "pricing_lab/numeric.hpp"

namespace plab {

using nlohmann::json;

namespace {

// Widest rate accepted; the kappa bisection bracket stops covering beyond it.
constexpr double kMaxRate = 1.0 - 1e-6;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "alg",       "r",     "exploit", "kappa", "discount",  "v",       "T",       "oracle",
      "tie_break", "tie_window", "bound", "out", "plot_data", "threads", "max_keys"};
  return keys;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double to_number(const std::string& text) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw ConfigError("not a number: '" + text + "'");
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("not a number: '" + text + "'");
  }
}

std::int64_t to_integer(const std::string& text) {
  const double x = to_number(text);
  if (x != std::floor(x)) throw ConfigError("not an integer: '" + text + "'");
  return static_cast<std::int64_t>(x);
}

std::vector<double> read_v_grid(const json& node) {
  if (node.is_array()) return node.get<std::vector<double>>();
  if (node.is_object() && node.contains("linspace")) {
    const auto spec = node.at("linspace").get<std::vector<double>>();
    if (spec.size() != 3) throw ConfigError("linspace takes [start, stop, count]");
    const auto n = static_cast<std::int64_t>(spec[2]);
    if (n < 1 || static_cast<double>(n) != spec[2]) {
      throw ConfigError("linspace count must be a positive integer");
    }
    std::vector<double> grid;
    for (std::int64_t i = 0; i < n; ++i) {
      grid.push_back(n == 1 ? spec[0]
                            : spec[0] + (spec[1] - spec[0]) * static_cast<double>(i) /
                                            static_cast<double>(n - 1));
    }
    return grid;
  }
  throw ConfigError("v must be a list or {\"linspace\": [start, stop, count]}");
}

std::vector<std::int64_t> read_t_grid(const json& node) {
  if (node.is_array()) return node.get<std::vector<std::int64_t>>();
  if (node.is_object() && node.contains("pow2")) {
    const auto spec = node.at("pow2").get<std::vector<std::int64_t>>();
    if (spec.size() != 3 || spec[2] < 1 || spec[0] < 0 || spec[1] > 62 || spec[0] > spec[1]) {
      throw ConfigError("pow2 takes [lo, hi, step] with 0 <= lo <= hi <= 62, step >= 1");
    }
    std::vector<std::int64_t> grid;
    for (std::int64_t e = spec[0]; e <= spec[1]; e += spec[2]) grid.push_back(std::int64_t{1} << e);
    return grid;
  }
  throw ConfigError("T must be a list or {\"pow2\": [lo, hi, step]}");
}

DiscountSpec read_discount(const json& node) {
  DiscountSpec spec;
  if (node.is_number()) {
    spec.gamma = node.get<double>();
    return spec;
  }
  if (node.is_string()) {
    spec.kind = node.get<std::string>();
    return spec;
  }
  if (!node.is_object()) throw ConfigError("discount must be an object");
  for (const auto& [key, value] : node.items()) {
    if (key == "kind") {
      spec.kind = value.get<std::string>();
    } else if (key == "gamma") {
      spec.gamma = value.get<double>();
    } else {
      throw ConfigError("unknown discount key '" + key + "'");
    }
  }
  return spec;
}

void validate(const ExperimentConfig& c) {
  if (c.alg.empty()) throw ConfigError("alg must be set");
  if (c.v_grid.empty()) throw ConfigError("v grid is empty");
  if (c.t_grid.empty()) throw ConfigError("T grid is empty");
  for (double v : c.v_grid) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("valuation " + format_real(v) + " outside [0, 1]");
  }
  for (std::int64_t t : c.t_grid) {
    if (t < 1) throw ConfigError("horizon " + std::to_string(t) + " must be >= 1");
  }
  if (c.discount.kind == "geometric") {
    if (!(c.discount.gamma > 0.0 && c.discount.gamma <= kMaxRate)) {
      throw ConfigError("gamma must lie in (0, 1 - 1e-6], got " + format_real(c.discount.gamma));
    }
  } else if (c.discount.kind != "telescoping") {
    throw ConfigError("unknown discount kind '" + c.discount.kind + "'");
  }
  if (!(c.kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (c.r && *c.r < 1) throw ConfigError("r must be >= 1");
  if (!(c.tie_window >= 0.0)) throw ConfigError("tie_window must be >= 0");
  if (c.bound != "auto" && c.bound != "on" && c.bound != "off") {
    throw ConfigError("bound must be auto, on or off");
  }
  if (c.threads < 0) throw ConfigError("threads must be >= 0");
  if (c.max_keys < 1) throw ConfigError("max_keys must be >= 1");
  if (c.oracle == OracleKind::kBruteForce) {
    const std::int64_t cap = OracleOptions{}.bruteforce_cap;
    for (std::int64_t t : c.t_grid) {
      if (t > cap) {
        throw ConfigError("bruteforce oracle supports T <= " + std::to_string(cap) + ", got " +
                          std::to_string(t));
      }
    }
  }
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    if (doc.contains("alg")) c.alg = doc.at("alg").get<std::string>();
    if (doc.contains("r")) {
      const json& r = doc.at("r");
      if (r.is_string()) {
        if (r.get<std::string>() != "auto") throw ConfigError("r must be an integer or \"auto\"");
      } else {
        c.r = r.get<std::int64_t>();
      }
    }
    if (doc.contains("exploit")) c.exploit = doc.at("exploit").get<std::string>();
    if (doc.contains("kappa")) c.kappa = doc.at("kappa").get<double>();
    if (doc.contains("discount")) c.discount = read_discount(doc.at("discount"));
    if (doc.contains("v")) c.v_grid = read_v_grid(doc.at("v"));
    if (doc.contains("T")) c.t_grid = read_t_grid(doc.at("T"));
    if (doc.contains("oracle")) c.oracle = parse_oracle(doc.at("oracle").get<std::string>());
    if (doc.contains("tie_break")) {
      c.tie_break = parse_tie_break(doc.at("tie_break").get<std::string>());
    }
    if (doc.contains("tie_window")) c.tie_window = doc.at("tie_window").get<double>();
    if (doc.contains("bound")) c.bound = doc.at("bound").get<std::string>();
    if (doc.contains("out")) c.out = doc.at("out").get<std::string>();
    if (doc.contains("plot_data")) c.plot_data = doc.at("plot_data").get<std::string>();
    if (doc.contains("threads")) c.threads = doc.at("threads").get<int>();
    if (doc.contains("max_keys")) c.max_keys = doc.at("max_keys").get<std::size_t>();
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionViolated& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path, const json& overrides) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot read config '" + path + "'");
    try {
      doc = json::parse(file);
    } catch (const json::exception& e) {
      throw ConfigError("cannot parse config '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  }
  if (!overrides.is_null()) {
    for (const auto& [key, value] : overrides.items()) doc[key] = value;
  }
  return parse_config(doc);
}

Experiment resolve(const ExperimentConfig& c) {
  const DiscountSequence discount = c.discount.kind == "telescoping"
                                        ? DiscountSequence::telescoping()
                                        : DiscountSequence::geometric(c.discount.gamma);
  const bool geometric = discount.is_geometric();
  const bool prrfes_family = c.alg.find("prrfes") != std::string::npos;
  const bool carried = c.alg == "preprrfes";

  try {
    PrrfesParams params;
    std::optional<double> big_g;
    if (prrfes_family) {
      if (c.r) {
        params.r = *c.r;
      } else if (!geometric) {
        params.r = penalization_rounds_for_kappa(discount, c.kappa);
      } else if (carried) {
        params.r = ceil_snapped(r_gamma_kappa(c.discount.gamma, c.kappa));
      } else {
        params.r = r_for_kappa_geometric(c.discount.gamma, c.kappa);
      }
      if (c.exploit == "preprrfes:auto") {
        if (!geometric) throw ConfigError("preprrfes:auto needs a geometric discount");
        big_g = g_gamma_kappa(c.discount.gamma, c.kappa);
      } else if (c.exploit.rfind("preprrfes:", 0) == 0) {
        big_g = to_number(c.exploit.substr(10));
      } else if (c.exploit != "default") {
        throw ConfigError("exploit must be default, preprrfes:<G> or preprrfes:auto");
      }
      if (big_g) params.exploit = ExploitRate::with_floor(*big_g);
    }

    Experiment e{make_machine(c.alg, params), discount, std::nullopt, std::nullopt, "NA", {}, {}};
    if (prrfes_family) {
      e.r = params.r;
      e.kappa = c.kappa;
      e.g_policy = params.exploit.policy;
    }
    e.oracle_options.tie_break = c.tie_break;
    e.oracle_options.tie_window = c.tie_window;
    e.oracle_options.max_keys = c.max_keys;

    std::string why_not;
    if (!geometric) {
      why_not = "bounds need a geometric discount";
    } else if (c.alg == "prrfes") {
      why_not = prrfes_ineligibility(c.discount.gamma, params.r, c.kappa);
    } else if (c.alg == "preprrfes") {
      why_not = big_g ? preprrfes_ineligibility(c.discount.gamma, params.r, c.kappa, *big_g)
                      : "the prePRRFES bound needs exploit preprrfes:<G>";
    } else {
      why_not = "no bound is known for '" + c.alg + "'";
    }
    if (c.bound == "on" && !why_not.empty()) {
      throw ConfigError("bound requested but parameters are not eligible: " + why_not);
    }
    if (c.bound != "off" && why_not.empty()) {
      const std::int64_t r = params.r;
      const double kappa = c.kappa;
      if (c.alg == "prrfes") {
        e.bound = [r, kappa](std::int64_t t, double v) { return prrfes_bound_rhs(t, r, kappa, v); };
      } else {
        const double g = *big_g;
        e.bound = [r, kappa, g](std::int64_t t, double v) {
          return preprrfes_bound_rhs(t, r, kappa, v, g);
        };
      }
    }
    return e;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

int worker_count(int requested, std::size_t cells) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("PRICING_LAB_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) n = std::min(n, limit);
  }
  n = std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(cells, 1));
  return n;
}

std::vector<RegretReport> run_cells(const ExperimentConfig& config, const Experiment& experiment) {
  const std::size_t per_v = config.t_grid.size();
  const std::size_t cells = config.v_grid.size() * per_v;
  std::vector<RegretReport> reports(cells);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      const double v = config.v_grid[i / per_v];
      const std::int64_t horizon = config.t_grid[i % per_v];
      RegretReport report;
      try {
        report = regret_curve(experiment.machine, {v}, {horizon}, experiment.discount,
                              config.oracle, experiment.oracle_options, experiment.bound)
                     .front();
      } catch (const std::exception& e) {
        report.v = v;
        report.horizon = horizon;
        report.oracle = config.oracle;
        report.tie_break = config.tie_break;
        report.error = e.what();
      }
      report.alg = config.alg;
      report.discount = experiment.discount.name();
      report.r = experiment.r;
      report.kappa = experiment.kappa;
      report.g_policy = experiment.g_policy;
      reports[i] = std::move(report);
    }
  };

  const int workers = worker_count(config.threads, cells);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
  }
  return reports;
}

std::string format_csv(const std::vector<RegretReport>& reports, const Experiment&) {
  const bool any_error = std::any_of(reports.begin(), reports.end(),
                                     [](const RegretReport& r) { return !r.error.empty(); });
  std::string out = "alg,gamma,r,kappa,g_policy,v,T,oracle,tie_break,sreg,bound_rhs,within_bound";
  out += any_error ? ",error\n" : "\n";
  for (const RegretReport& r : reports) {
    const bool failed = !r.error.empty();
    out += csv_field(r.alg) + ',' + csv_field(r.discount) + ',';
    out += (r.r ? std::to_string(*r.r) : "NA") + ',';
    out += (r.kappa ? format_real(*r.kappa) : "NA") + ',';
    out += csv_field(r.g_policy) + ',' + format_real(r.v) + ',' + std::to_string(r.horizon) + ',';
    out += to_string(r.oracle) + ',' + to_string(r.tie_break) + ',';
    out += (failed ? "NA" : format_real(r.sreg)) + ',';
    out += (r.bound_rhs ? format_real(*r.bound_rhs) : "not-applicable") + ',';
    if (failed && r.bound_rhs) {
      out += "NA";
    } else if (r.within_bound) {
      out += *r.within_bound ? "true" : "false";
    } else {
      out += "not-applicable";
    }
    if (any_error) out += ',' + csv_field(r.error);
    out += '\n';
  }
  return out;
}

std::string format_plot_data(const std::vector<RegretReport>& reports) {
  std::string out;
  bool first = true;
  std::optional<double> current;
  for (const RegretReport& r : reports) {
    if (!current || *current != r.v) {
      if (!first) out += "\n\n";
      first = false;
      current = r.v;
      out += "# v=" + format_real(r.v) + "\n# T sreg\n";
    }
    if (!r.error.empty()) continue;
    out += std::to_string(r.horizon) + ' ' + format_real(r.sreg) + '\n';
  }
  return out;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<RegretReport> reports;
  std::optional<Experiment> experiment;
  try {
    experiment.emplace(resolve(config));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  reports = run_cells(config, *experiment);
  try {
    const std::string csv = format_csv(reports, *experiment);
    if (config.out.empty()) {
      out << csv;
    } else {
      write_file(config.out, csv);
    }
    if (!config.plot_data.empty()) write_file(config.plot_data, format_plot_data(reports));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  int status = kExitOk;
  for (const RegretReport& r : reports) {
    if (r.error.empty()) continue;
    err << "cell v=" << format_real(r.v) << " T=" << r.horizon << " failed: " << r.error << '\n';
    status = kExitCellError;
  }
  return status;
}

json parse_v_flag(const std::string& text) {
  if (text.rfind("linspace:", 0) == 0) {
    const auto parts = split(text.substr(9), ':');
    if (parts.size() != 3) throw ConfigError("expected linspace:start:stop:count");
    return json{{"linspace", {to_number(parts[0]), to_number(parts[1]), to_number(parts[2])}}};
  }
  json grid = json::array();
  for (const std::string& item : split(text, ',')) grid.push_back(to_number(item));
  return grid;
}

json parse_t_flag(const std::string& text) {
  if (text.rfind("pow2:", 0) == 0) {
    const auto parts = split(text.substr(5), ':');
    if (parts.size() != 3) throw ConfigError("expected pow2:lo:hi:step");
    return json{{"pow2", {to_integer(parts[0]), to_integer(parts[1]), to_integer(parts[2])}}};
  }
  json grid = json::array();
  for (const std::string& item : split(text, ',')) grid.push_back(to_integer(item));
  return grid;
}

std::vector<TraceRow> trace_rows(const PlayRecord& play, const DiscountSequence& discount) {
  std::vector<TraceRow> rows;
  rows.reserve(play.decisions.size());
  double regret = 0.0;
  for (std::size_t i = 0; i < play.decisions.size(); ++i) {
    TraceRow row;
    row.t = play.first_round + static_cast<std::int64_t>(i);
    row.price = play.prices[i];
    row.decision = play.decisions[i];
    const bool accepted = row.decision == Decision::kAccept;
    const double price = row.price.to_double();
    row.discounted_gain = accepted ? discount.gamma_at(row.t) * (play.v - price) : 0.0;
    regret += accepted ? play.v - price : play.v;
    row.cumulative_regret = regret;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_trace(const std::vector<TraceRow>& rows) {
  std::string out = "t price decision discounted_gain regret\n";
  for (const TraceRow& row : rows) {
    out += std::to_string(row.t) + ' ' + row.price.to_string() + ' ' +
           (row.decision == Decision::kAccept ? "1" : "0") + ' ' +
           format_real(row.discounted_gain) + ' ' + format_real(row.cumulative_regret) + '\n';
  }
  return out;
}

}  // namespace plab
