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


#ifndef PRICING_LAB_HARNESS_HPP
#define PRICING_LAB_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pricing_lab/algorithms.hpp"
#include "pricing_lab/buyer.hpp"
#include "pricing_lab/discounts.hpp"
#include "pricing_lab/regret.hpp"

namespace plab {

/// Exit statuses of the command-line runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCellError = 2;
inline constexpr int kExitConfigError = 3;

struct DiscountSpec {
  std::string kind = "geometric";  // "geometric" or "telescoping"
  double gamma = 0.8;
};

/// One sweep over a (v, T) grid. JSON keys match the field names except
/// `v_grid` ("v"), `t_grid` ("T") and `plot_data` ("plot_data").
struct ExperimentConfig {
  std::string alg = "prrfes";
  std::optional<std::int64_t> r;  // absent means derived from kappa
  std::string exploit = "default";  // "default", "preprrfes:<G>" or "preprrfes:auto"
  double kappa = 1.0;
  DiscountSpec discount;
  std::vector<double> v_grid;
  std::vector<std::int64_t> t_grid;
  OracleKind oracle = OracleKind::kMemoized;
  TieBreak tie_break = TieBreak::kMaxRegret;
  double tie_window = 0.0;
  std::string bound = "auto";  // "auto", "on" or "off"
  std::string out;             // empty writes to the given stream
  std::string plot_data;
  int threads = 0;             // 0 uses the hardware concurrency
  std::size_t max_keys = OracleOptions{}.max_keys;
};

/// Parses and validates a config document. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
/// Reads a JSON file, applies `overrides` key by key, then parses.
ExperimentConfig load_config(const std::string& path, const nlohmann::json& overrides = {});

/// The machine and labels a config resolves to.
struct Experiment {
  PricingMachine machine;
  DiscountSequence discount;
  std::optional<std::int64_t> r;
  std::optional<double> kappa;
  std::string g_policy;
  BoundFunction bound;
  OracleOptions oracle_options;
};

/// Throws ConfigError when the config names something that cannot be built
/// or requests a bound its parameters are not eligible for.
Experiment resolve(const ExperimentConfig& config);

/// Worker count: `requested` (or the hardware concurrency when 0), capped by
/// PRICING_LAB_THREADS and by the number of cells.
int worker_count(int requested, std::size_t cells);

/// Solves every cell, v-major, on a worker pool.
std::vector<RegretReport> run_cells(const ExperimentConfig& config, const Experiment& experiment);

/// CSV with the fixed header; an `error` column is appended when any cell
/// failed.
std::string format_csv(const std::vector<RegretReport>& reports, const Experiment& experiment);
/// gnuplot data: one block per v, rows "T sreg", blocks separated by two
/// blank lines.
std::string format_plot_data(const std::vector<RegretReport>& reports);

/// Runs the sweep and writes artifacts. Returns the exit status; `out`
/// receives the CSV when config.out is empty, `err` receives diagnostics.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// %.12g.
std::string format_real(double x);

/// Grid spellings shared by config files and flags: "0.1,0.2" or
/// "linspace:a:b:n" for v, "64,256" or "pow2:lo:hi:step" for T.
nlohmann::json parse_v_flag(const std::string& text);
nlohmann::json parse_t_flag(const std::string& text);

struct TraceRow {
  std::int64_t t = 0;
  Price price;
  Decision decision = Decision::kReject;
  double discounted_gain = 0.0;
  double cumulative_regret = 0.0;
};

std::vector<TraceRow> trace_rows(const PlayRecord& play, const DiscountSequence& discount);
std::string format_trace(const std::vector<TraceRow>& rows);

}  // namespace plab

#endif  // PRICING_LAB_HARNESS_HPP
