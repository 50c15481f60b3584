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


#include "linklab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#ifndef LINKLAB_VERSION
#define LINKLAB_VERSION "0.0.0"
#endif

namespace linklab {

using nlohmann::json;

const char* to_string(Quantity q) { return q == Quantity::outage ? "outage" : "ber"; }

void SweepSpec::validate() const {
  if (!std::isfinite(start_db) || !std::isfinite(stop_db) || !std::isfinite(step_db)) {
    throw ConfigError("sweep: start_db, stop_db and step_db must be finite");
  }
  if (start_db > stop_db) {
    throw ConfigError("sweep: start_db must be <= stop_db");
  }
  if (!(step_db > 0.0)) {
    throw ConfigError("sweep: step_db must be > 0");
  }
}

std::vector<double> SweepSpec::points() const {
  validate();
  const auto n = static_cast<long>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    out.push_back(start_db + static_cast<double>(i) * step_db);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace {

FsoSpec negexp_spec(double lambda) {
  FsoSpec f;
  f.kind = FsoSpec::Kind::negexp;
  f.lambda = lambda;
  return f;
}

FsoSpec gg_spec(double alpha, double beta, double xi) {
  FsoSpec f;
  f.kind = FsoSpec::Kind::gg_pe;
  f.alpha = alpha;
  f.beta = beta;
  f.xi = xi;
  return f;
}

CurveSpec curve(std::string id, int n, int m, FsoSpec fso) {
  CurveSpec c;
  c.id = std::move(id);
  c.n_antennas = n;
  c.n_relays = m;
  c.gamma_th_db = 10.0;
  c.fso = fso;
  return c;
}

std::string fmt_lambda(double l) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "lambda=%g", l);
  return buf;
}

}  // namespace

RunConfig preset_config(const std::string& name) {
  RunConfig cfg;
  cfg.preset = name;
  const FsoSpec moderate = gg_spec(4.0, 1.9, 10.45);
  const FsoSpec strong = gg_spec(4.2, 1.4, 2.45);
  if (name == "fig2") {
    for (int n = 1; n <= 4; ++n) cfg.curves.push_back(curve("N=" + std::to_string(n), n, 2, negexp_spec(1.0)));
    cfg.methods = {Method::closed, Method::montecarlo};
  } else if (name == "fig3") {
    for (int m = 1; m <= 4; ++m) cfg.curves.push_back(curve("M=" + std::to_string(m), 2, m, negexp_spec(1.0)));
    cfg.methods = {Method::closed, Method::montecarlo};
  } else if (name == "fig4") {
    for (double l : {1.0, 2.0, 5.0}) cfg.curves.push_back(curve(fmt_lambda(l), 2, 2, negexp_spec(l)));
    cfg.methods = {Method::closed, Method::montecarlo};
  } else if (name == "fig5") {
    cfg.quantity = Quantity::ber;
    cfg.curves.push_back(curve("moderate", 2, 2, moderate));
    cfg.curves.push_back(curve("strong", 2, 2, strong));
    cfg.methods = {Method::series, Method::asymptotic, Method::quadrature};
  } else if (name == "fig6") {
    for (int m = 1; m <= 4; ++m) cfg.curves.push_back(curve("M=" + std::to_string(m), 2, m, moderate));
    cfg.methods = {Method::closed, Method::series, Method::asymptotic, Method::montecarlo};
  } else if (name == "fig7") {
    for (int n = 1; n <= 4; ++n) cfg.curves.push_back(curve("N=" + std::to_string(n), n, 2, moderate));
    cfg.methods = {Method::closed, Method::series, Method::asymptotic, Method::montecarlo};
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected fig2..fig7)");
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) {
      throw ConfigError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

double get_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(where + "." + key + ": missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(where + "." + key + ": expected a number");
  }
  return v.get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(where + "." + key + ": missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(where + "." + key + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(where + "." + key + ": missing");
  }
  const json& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError(where + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

FsoSpec parse_fso(const json& j, const std::string& where) {
  const std::string model = get_string(j, where, "model");
  FsoSpec f;
  if (model == "negexp") {
    check_keys(j, where, {"model", "lambda"});
    f.kind = FsoSpec::Kind::negexp;
    f.lambda = get_number(j, where, "lambda");
    if (!(f.lambda > 0.0)) throw ConfigError(where + ".lambda: must be > 0");
  } else if (model == "gamma_gamma_pe") {
    check_keys(j, where, {"model", "alpha", "beta", "xi", "kappa"});
    f.kind = FsoSpec::Kind::gg_pe;
    f.alpha = get_number(j, where, "alpha");
    f.beta = get_number(j, where, "beta");
    f.xi = get_number(j, where, "xi");
    if (j.contains("kappa")) f.kappa = get_number(j, where, "kappa");
    if (!(f.alpha > 0.0) || !(f.beta > 0.0) || !(f.xi > 0.0) || (f.kappa && !(*f.kappa > 0.0))) {
      throw ConfigError(where + ": alpha, beta, xi, kappa must be > 0");
    }
  } else {
    throw ConfigError(where + ".model: expected 'negexp' or 'gamma_gamma_pe'");
  }
  return f;
}

CurveSpec parse_curve(const json& j, const std::string& where) {
  check_keys(j, where, {"id", "N", "M", "gamma_th_db", "eta", "fso"});
  CurveSpec c;
  c.id = get_string(j, where, "id");
  c.n_antennas = static_cast<int>(get_integer(j, where, "N"));
  c.n_relays = static_cast<int>(get_integer(j, where, "M"));
  c.gamma_th_db = get_number(j, where, "gamma_th_db");
  if (j.contains("eta")) c.eta = get_number(j, where, "eta");
  if (c.n_antennas < 1) throw ConfigError(where + ".N: must be >= 1");
  if (c.n_relays < 0) throw ConfigError(where + ".M: must be >= 0");
  if (!(c.eta > 0.0)) throw ConfigError(where + ".eta: must be > 0");
  if (!j.contains("fso")) throw ConfigError(where + ".fso: missing");
  c.fso = parse_fso(j.at("fso"), where + ".fso");
  return c;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config", {"preset", "quantity", "sweep", "methods", "curves", "truncation",
                             "quadrature", "mc"});
  RunConfig cfg;
  const bool has_preset = doc.contains("preset");
  if (has_preset) {
    cfg = preset_config(get_string(doc, "config", "preset"));
    for (const char* key : {"curves", "quantity"}) {
      if (doc.contains(key)) {
        throw ConfigError(std::string("config.") + key + ": not allowed together with a preset");
      }
    }
  } else {
    const std::string q = get_string(doc, "config", "quantity");
    if (q == "outage") {
      cfg.quantity = Quantity::outage;
    } else if (q == "ber") {
      cfg.quantity = Quantity::ber;
    } else {
      throw ConfigError("config.quantity: expected 'outage' or 'ber'");
    }
    if (!doc.contains("curves") || !doc.at("curves").is_array() || doc.at("curves").empty()) {
      throw ConfigError("config.curves: expected a non-empty array");
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc.at("curves").size(); ++i) {
      cfg.curves.push_back(parse_curve(doc.at("curves")[i], "config.curves[" + std::to_string(i) + "]"));
      if (!ids.insert(cfg.curves.back().id).second) {
        throw ConfigError("config.curves[" + std::to_string(i) + "].id: duplicate '" +
                          cfg.curves.back().id + "'");
      }
    }
    if (!doc.contains("sweep")) throw ConfigError("config.sweep: missing");
    if (!doc.contains("methods")) throw ConfigError("config.methods: missing");
  }
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    check_keys(s, "config.sweep", {"start_db", "stop_db", "step_db"});
    cfg.sweep.start_db = get_number(s, "config.sweep", "start_db");
    cfg.sweep.stop_db = get_number(s, "config.sweep", "stop_db");
    cfg.sweep.step_db = get_number(s, "config.sweep", "step_db");
  }
  cfg.sweep.validate();
  if (doc.contains("methods")) {
    const json& m = doc.at("methods");
    if (!m.is_array() || m.empty()) throw ConfigError("config.methods: expected a non-empty array");
    cfg.methods.clear();
    for (const json& e : m) {
      const auto parsed = e.is_string() ? parse_method(e.get<std::string>()) : std::nullopt;
      if (!parsed) {
        throw ConfigError("config.methods: unknown method " + e.dump() +
                          " (closed, series, asymptotic, quadrature, mc)");
      }
      if (std::find(cfg.methods.begin(), cfg.methods.end(), *parsed) == cfg.methods.end()) {
        cfg.methods.push_back(*parsed);
      }
    }
  }
  if (doc.contains("truncation")) {
    cfg.truncation = static_cast<int>(get_integer(doc, "config", "truncation"));
    if (cfg.truncation < 1) throw ConfigError("config.truncation: must be >= 1");
  }
  if (doc.contains("quadrature")) {
    const json& q = doc.at("quadrature");
    check_keys(q, "config.quadrature", {"node_count", "relative_tolerance", "absolute_tolerance", "max_nodes"});
    if (q.contains("node_count")) cfg.quadrature.node_count = static_cast<int>(get_integer(q, "config.quadrature", "node_count"));
    if (q.contains("relative_tolerance")) cfg.quadrature.relative_tolerance = get_number(q, "config.quadrature", "relative_tolerance");
    if (q.contains("absolute_tolerance")) cfg.quadrature.absolute_tolerance = get_number(q, "config.quadrature", "absolute_tolerance");
    if (q.contains("max_nodes")) cfg.quadrature.max_nodes = static_cast<int>(get_integer(q, "config.quadrature", "max_nodes"));
    try {
      cfg.quadrature.validate();
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("config.quadrature: ") + e.what());
    }
  }
  const bool wants_mc =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::montecarlo) != cfg.methods.end();
  if (doc.contains("mc")) {
    const json& m = doc.at("mc");
    check_keys(m, "config.mc", {"trials", "seed", "ber_mode", "batch"});
    if (m.contains("trials")) cfg.mc.trials = get_integer(m, "config.mc", "trials");
    if (m.contains("seed")) cfg.mc.seed = static_cast<std::uint64_t>(get_integer(m, "config.mc", "seed"));
    if (m.contains("batch")) cfg.mc.batch = get_integer(m, "config.mc", "batch");
    if (m.contains("ber_mode")) {
      const std::string mode = get_string(m, "config.mc", "ber_mode");
      if (mode == "equivalent_snr") {
        cfg.mc.ber_mode = BerMode::equivalent_snr;
      } else if (mode == "cascade_xor") {
        cfg.mc.ber_mode = BerMode::cascade_xor;
      } else {
        throw ConfigError("config.mc.ber_mode: expected 'equivalent_snr' or 'cascade_xor'");
      }
    }
    try {
      cfg.mc.validate();
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("config.mc: ") + e.what());
    }
    if (cfg.mc.trials < kMinReportedTrials) {
      throw ConfigError("config.mc.trials: must be >= " + std::to_string(kMinReportedTrials));
    }
  } else if (wants_mc && !has_preset) {
    throw ConfigError("config.mc: required when methods include mc");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

bool method_applicable(Method m, Quantity q, FsoSpec::Kind kind) {
  const bool gg = kind == FsoSpec::Kind::gg_pe;
  switch (m) {
    case Method::closed:
      return q == Quantity::outage || !gg;
    case Method::series:
    case Method::asymptotic:
      return gg;
    case Method::quadrature:
      return q == Quantity::ber;
    case Method::montecarlo:
      return true;
  }
  return false;
}

SystemConfig make_system(const CurveSpec& c, double gamma_avg_db, Quantity q, int truncation) {
  const double g = db_to_linear(gamma_avg_db);
  Topology top;
  top.n_antennas = c.n_antennas;
  top.n_relays = c.n_relays;
  top.threshold_snr = q == Quantity::outage ? db_to_linear(c.gamma_th_db) : 0.0;
  LinkBudget b;
  b.mean_snr_fso = g * c.eta * c.eta;
  b.mean_snr_rf = g;
  b.eta = c.eta;
  if (c.fso.kind == FsoSpec::Kind::negexp) {
    return SystemConfig(top, b, NegExp(c.fso.lambda, b.mean_snr_fso), truncation);
  }
  return SystemConfig(top, b, GammaGammaPE(c.fso.alpha, c.fso.beta, c.fso.xi, b.mean_snr_fso, c.fso.kappa),
                      truncation);
}

namespace {

EvalResult evaluate_analytic(const RunConfig& cfg, const SystemConfig& sys, Method m) {
  const bool gg = sys.is_gg_pe();
  if (cfg.quantity == Quantity::outage) {
    switch (m) {
      case Method::closed:
        return gg ? outage_gg_pe(sys) : outage_negexp(sys);
      case Method::series:
        return outage_gg_pe_series(sys, cfg.truncation);
      case Method::asymptotic:
        return outage_asymptotic(sys);
      default:
        break;
    }
  } else {
    switch (m) {
      case Method::closed:
        return ber_negexp_closed(sys);
      case Method::series:
        return ber_gg_pe_series(sys, cfg.truncation);
      case Method::asymptotic:
        return ber_gg_pe_asymptotic(sys);
      case Method::quadrature:
        return ber_dpsk_quadrature(sys, cfg.quadrature);
      default:
        break;
    }
  }
  throw std::invalid_argument(std::string("method ") + to_string(m) + " does not apply");
}

}  // namespace

RunRow evaluate_point(const RunConfig& cfg, const CurveSpec& c, Method m, double gamma_avg_db) {
  RunRow row;
  row.curve = c.id;
  row.method = m;
  row.gamma_avg_db = gamma_avg_db;
  row.n_antennas = c.n_antennas;
  row.n_relays = c.n_relays;
  if (cfg.quantity == Quantity::outage) row.gamma_th_db = c.gamma_th_db;
  try {
    const SystemConfig sys = make_system(c, gamma_avg_db, cfg.quantity, cfg.truncation);
    if (m == Method::montecarlo) {
      const McEstimate e = cfg.quantity == Quantity::outage ? simulate_outage(sys, cfg.mc)
                                                            : simulate_ber(sys, cfg.mc);
      row.value = e.mean;
      row.ci_halfwidth = e.half_width_95;
      row.seed = cfg.mc.seed;
      row.note = std::string("trials=") + std::to_string(e.trials);
      return row;
    }
    const EvalResult r = evaluate_analytic(cfg, sys, m);
    row.value = r.value;
    row.terms_used = r.diagnostics.terms_used;
    row.err_estimate = r.diagnostics.err_estimate;
    row.converged = r.diagnostics.converged;
    row.note = r.diagnostics.note;
  } catch (const std::exception& e) {
    row.value.reset();
    row.converged = false;
    row.note = std::string("error: ") + e.what();
  }
  return row;
}

bool RunRecord::has_fatal() const {
  return std::any_of(rows.begin(), rows.end(), [](const RunRow& r) { return !r.value; });
}

RunRecord run_sweep(const RunConfig& cfg, int threads) {
  RunRecord rec;
  rec.tool_version = LINKLAB_VERSION;
  rec.preset = cfg.preset;
  rec.quantity = cfg.quantity;
  rec.seed = cfg.mc.seed;
  if (cfg.curves.empty()) {
    throw ConfigError("no curves to evaluate");
  }
  std::vector<Method> methods;
  for (Method m : cfg.methods) {
    const bool ok = std::all_of(cfg.curves.begin(), cfg.curves.end(), [&](const CurveSpec& c) {
      return method_applicable(m, cfg.quantity, c.fso.kind);
    });
    if (ok) {
      methods.push_back(m);
    } else {
      rec.warnings.push_back(std::string("method '") + to_string(m) + "' does not apply to " +
                             to_string(cfg.quantity) + " for every curve; skipped");
    }
  }
  if (methods.empty()) {
    throw ConfigError("none of the requested methods applies to this configuration");
  }
  std::sort(methods.begin(), methods.end());
  const std::vector<double> points = cfg.sweep.points();

  struct Task {
    std::size_t curve;
    Method method;
    double db;
  };
  std::vector<Task> tasks;
  for (Method m : methods) {
    for (double db : points) {
      for (std::size_t c = 0; c < cfg.curves.size(); ++c) tasks.push_back({c, m, db});
    }
  }
  rec.rows.resize(tasks.size());
  const int workers = threads > 0 ? threads : default_thread_count();
  // Monte-Carlo points parallelise internally; the rest share a pool.
  std::vector<std::size_t> pooled;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (tasks[i].method == Method::montecarlo) {
      RunConfig local = cfg;
      local.mc.threads = workers;
      rec.rows[i] = evaluate_point(local, cfg.curves[tasks[i].curve], tasks[i].method, tasks[i].db);
    } else {
      pooled.push_back(i);
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pooled.size()) return;
      const Task& t = tasks[pooled[k]];
      rec.rows[pooled[k]] = evaluate_point(cfg, cfg.curves[t.curve], t.method, t.db);
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(pooled.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

template <typename T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> json_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

void write_csv(std::ostream& os, const RunRecord& rec) {
  os << kCsvHeader << '\n';
  for (const RunRow& r : rec.rows) {
    os << rec.preset << '/' << r.curve << ',' << to_string(r.method) << ',' << num(r.gamma_avg_db)
       << ',' << r.n_antennas << ',' << r.n_relays << ',' << opt_num(r.gamma_th_db) << ','
       << opt_num(r.value) << ',' << opt_num(r.ci_halfwidth) << ','
       << (r.terms_used ? std::to_string(*r.terms_used) : std::string()) << ','
       << opt_num(r.err_estimate) << ',' << (r.seed ? std::to_string(*r.seed) : std::string())
       << '\n';
  }
}

json to_json(const RunRecord& rec) {
  json rows = json::array();
  for (const RunRow& r : rec.rows) {
    rows.push_back({{"curve", r.curve},
                    {"method", to_string(r.method)},
                    {"gamma_avg_db", r.gamma_avg_db},
                    {"N", r.n_antennas},
                    {"M", r.n_relays},
                    {"gamma_th_db", opt_json(r.gamma_th_db)},
                    {"value", opt_json(r.value)},
                    {"ci_halfwidth", opt_json(r.ci_halfwidth)},
                    {"terms_used", opt_json(r.terms_used)},
                    {"err_estimate", opt_json(r.err_estimate)},
                    {"seed", opt_json(r.seed)},
                    {"converged", r.converged},
                    {"note", r.note}});
  }
  return {{"tool_version", rec.tool_version},
          {"preset", rec.preset},
          {"quantity", to_string(rec.quantity)},
          {"seed", rec.seed},
          {"warnings", rec.warnings},
          {"rows", rows}};
}

RunRecord record_from_json(const json& doc) {
  RunRecord rec;
  rec.tool_version = doc.at("tool_version").get<std::string>();
  rec.preset = doc.at("preset").get<std::string>();
  rec.quantity = doc.at("quantity").get<std::string>() == "ber" ? Quantity::ber : Quantity::outage;
  rec.seed = doc.at("seed").get<std::uint64_t>();
  rec.warnings = doc.at("warnings").get<std::vector<std::string>>();
  for (const json& j : doc.at("rows")) {
    RunRow r;
    r.curve = j.at("curve").get<std::string>();
    const auto m = parse_method(j.at("method").get<std::string>());
    if (!m) throw std::runtime_error("record_from_json: unknown method");
    r.method = *m;
    r.gamma_avg_db = j.at("gamma_avg_db").get<double>();
    r.n_antennas = j.at("N").get<int>();
    r.n_relays = j.at("M").get<int>();
    r.gamma_th_db = json_opt<double>(j, "gamma_th_db");
    r.value = json_opt<double>(j, "value");
    r.ci_halfwidth = json_opt<double>(j, "ci_halfwidth");
    r.terms_used = json_opt<int>(j, "terms_used");
    r.err_estimate = json_opt<double>(j, "err_estimate");
    r.seed = json_opt<std::uint64_t>(j, "seed");
    r.converged = j.at("converged").get<bool>();
    r.note = j.at("note").get<std::string>();
    rec.rows.push_back(std::move(r));
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Crossings
// ---------------------------------------------------------------------------

std::optional<double> crossing_of(const std::vector<double>& db, const std::vector<double>& value,
                                  double target) {
  if (db.size() != value.size()) {
    throw std::invalid_argument("crossing_of: size mismatch");
  }
  if (!(target > 0.0)) {
    throw std::domain_error("crossing_of: target must be > 0");
  }
  const double lt = std::log10(target);
  for (std::size_t i = 0; i + 1 < db.size(); ++i) {
    const double v0 = value[i];
    const double v1 = value[i + 1];
    if (!(v0 > 0.0) || !(v1 > 0.0)) continue;
    if ((v0 - target) * (v1 - target) > 0.0) continue;
    const double l0 = std::log10(v0);
    const double l1 = std::log10(v1);
    if (l0 == l1) return db[i];
    return db[i] + (l0 - lt) / (l0 - l1) * (db[i + 1] - db[i]);
  }
  return std::nullopt;
}

std::vector<Crossing> crossings(const RunRecord& rec, double target) {
  std::vector<std::pair<std::string, Method>> order;
  std::map<std::pair<std::string, Method>, std::vector<std::pair<double, double>>> curves;
  for (const RunRow& r : rec.rows) {
    const auto key = std::make_pair(r.curve, r.method);
    if (!curves.count(key)) order.push_back(key);
    curves[key].emplace_back(r.gamma_avg_db, r.value ? *r.value : std::nan(""));
  }
  std::vector<Crossing> out;
  for (const auto& key : order) {
    auto pts = curves[key];
    std::sort(pts.begin(), pts.end());
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& p : pts) {
      x.push_back(p.first);
      y.push_back(p.second);
    }
    out.push_back({key.first, key.second, crossing_of(x, y, target)});
  }
  return out;
}

}  // namespace linklab
