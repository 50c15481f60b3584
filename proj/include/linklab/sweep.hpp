// SPDX-License-Identifier: Apache-2.0
//
// linklab: link-performance toolkit for multi-hop hybrid FSO/RF relaying
// Copyright (C) 2026 linklab contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Configuration-driven sweeps over the average SNR, figure presets, and the
// CSV/JSON run records consumed by the plotting tool.

#pragma once

#include "linklab/analytics.hpp"
#include "linklab/montecarlo.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace linklab {

/// Schema or semantic error in a run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Quantity { outage, ber };

const char* to_string(Quantity q);

struct FsoSpec {
  enum class Kind { negexp, gg_pe } kind = Kind::negexp;
  double lambda = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double xi = 0.0;
  std::optional<double> kappa;
};

struct CurveSpec {
  std::string id;
  int n_antennas = 1;
  int n_relays = 0;
  double gamma_th_db = 10.0;
  double eta = 1.0;
  FsoSpec fso;
};

struct SweepSpec {
  double start_db = 0.0;
  double stop_db = 60.0;
  double step_db = 1.0;

  void validate() const;
  std::vector<double> points() const;
};

/// Smallest Monte-Carlo run whose estimates are reported.
inline constexpr std::int64_t kMinReportedTrials = 10000;

struct RunConfig {
  std::string preset = "custom";
  Quantity quantity = Quantity::outage;
  SweepSpec sweep;
  std::vector<Method> methods;
  std::vector<CurveSpec> curves;
  int truncation = kDefaultTruncation;
  QuadratureSpec quadrature;
  McSpec mc;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
  return names;
}

/// Built-in figure configuration (curves, quantity, default methods,
/// 0..60 dB in 1 dB steps). Throws ConfigError for unknown names.
RunConfig preset_config(const std::string& name);

/// Parses a JSON config document. A "preset" key starts from that preset;
/// "curves" and "quantity" are then not allowed, the other keys override.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Methods that make sense for the quantity and every curve's FSO model.
bool method_applicable(Method m, Quantity q, FsoSpec::Kind kind);

struct RunRow {
  std::string curve;  // "<preset>/<curve id>" in CSV
  Method method = Method::closed;
  double gamma_avg_db = 0.0;
  int n_antennas = 1;
  int n_relays = 0;
  std::optional<double> gamma_th_db;  // outage only
  std::optional<double> value;        // empty if evaluation failed
  std::optional<double> ci_halfwidth;
  std::optional<int> terms_used;
  std::optional<double> err_estimate;
  std::optional<std::uint64_t> seed;
  bool converged = true;
  std::string note;
};

struct RunRecord {
  std::string tool_version;
  std::string preset;
  Quantity quantity = Quantity::outage;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
  std::vector<RunRow> rows;  // sorted by (method, gamma_avg_db, curve order)

  /// True when a row failed to evaluate.
  bool has_fatal() const;
};

SystemConfig make_system(const CurveSpec& curve, double gamma_avg_db, Quantity q,
                         int truncation);

/// Evaluates one (curve, method, SNR) point. Evaluation errors are caught
/// and recorded in the row.
RunRow evaluate_point(const RunConfig& cfg, const CurveSpec& curve, Method m,
                      double gamma_avg_db);

/// Evaluates every point. Inapplicable methods are dropped with a warning;
/// ConfigError if none remain. `threads` = 0 uses default_thread_count().
RunRecord run_sweep(const RunConfig& cfg, int threads = 0);

inline constexpr const char* kCsvHeader =
    "preset,method,gamma_avg_db,N,M,gamma_th_db,value,ci_halfwidth,terms_used,err_estimate,seed";

void write_csv(std::ostream& os, const RunRecord& rec);
nlohmann::json to_json(const RunRecord& rec);
RunRecord record_from_json(const nlohmann::json& doc);

struct Crossing {
  std::string curve;
  Method method = Method::closed;
  std::optional<double> gamma_avg_db;  // empty: curve does not bracket target
};

/// Where each (curve, method) crosses `target`, by linear interpolation of
/// the dB abscissa against log10(value).
std::vector<Crossing> crossings(const RunRecord& rec, double target);
std::optional<double> crossing_of(const std::vector<double>& db, const std::vector<double>& value,
                                  double target);

}  // namespace linklab
