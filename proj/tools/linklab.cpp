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


// linklab command-line front end.
//
//   linklab run --config <file> [--preset figN] [--out-dir D] [--seed S]
//               [--methods closed,series,asymptotic,quadrature,mc] [--trials T]
//   linklab crossings --record <run.json> --target P
//
// Exit codes: 0 success, 2 configuration error, 3 fatal evaluation error.

#include "linklab/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitEval = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct RunOptions {
  std::string config;
  std::string preset;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string methods;
  std::optional<std::int64_t> trials;
};

int do_run(const RunOptions& opt) {
  using nlohmann::json;
  linklab::RunConfig cfg;
  try {
    std::ifstream in(opt.config);
    if (!in) {
      throw linklab::ConfigError("cannot open config file '" + opt.config + "'");
    }
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw linklab::ConfigError(opt.config + ": " + e.what());
    }
    if (!opt.preset.empty()) {
      if (!doc.is_object()) throw linklab::ConfigError(opt.config + ": expected an object");
      doc["preset"] = opt.preset;
      doc.erase("curves");
      doc.erase("quantity");
    }
    if (!opt.methods.empty()) {
      doc["methods"] = split(opt.methods, ',');
    }
    if (opt.seed || opt.trials) {
      json& mc = doc["mc"];
      if (mc.is_null()) mc = json::object();
      if (opt.seed) mc["seed"] = *opt.seed;
      if (opt.trials) mc["trials"] = *opt.trials;
    }
    cfg = linklab::parse_config(doc);
  } catch (const linklab::ConfigError& e) {
    std::cerr << "linklab: config error: " << e.what() << '\n';
    return kExitConfig;
  }

  linklab::RunRecord rec;
  try {
    rec = linklab::run_sweep(cfg);
  } catch (const linklab::ConfigError& e) {
    std::cerr << "linklab: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "linklab: evaluation failed: " << e.what() << '\n';
    return kExitEval;
  }
  for (const std::string& w : rec.warnings) {
    std::cerr << "linklab: warning: " << w << '\n';
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  const fs::path csv_path = fs::path(opt.out_dir) / (cfg.preset + ".csv");
  const fs::path json_path = fs::path(opt.out_dir) / (cfg.preset + ".json");
  std::ofstream csv(csv_path);
  std::ofstream js(json_path);
  if (!csv || !js) {
    std::cerr << "linklab: cannot write to " << opt.out_dir << '\n';
    return kExitEval;
  }
  linklab::write_csv(csv, rec);
  js << linklab::to_json(rec).dump(2) << '\n';
  std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << " ("
            << rec.rows.size() << " rows)\n";

  int failed = 0;
  for (const linklab::RunRow& r : rec.rows) {
    if (!r.value) {
      ++failed;
      std::cerr << "linklab: " << r.curve << " " << linklab::to_string(r.method) << " at "
                << r.gamma_avg_db << " dB: " << r.note << '\n';
    }
  }
  return failed ? kExitEval : 0;
}

int do_crossings(const std::string& record_path, double target) {
  std::ifstream in(record_path);
  if (!in) {
    std::cerr << "linklab: cannot open " << record_path << '\n';
    return kExitConfig;
  }
  linklab::RunRecord rec;
  try {
    rec = linklab::record_from_json(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    std::cerr << "linklab: bad run record: " << e.what() << '\n';
    return kExitConfig;
  }
  std::cout << "curve,method,gamma_avg_db\n";
  for (const linklab::Crossing& c : linklab::crossings(rec, target)) {
    std::cout << rec.preset << '/' << c.curve << ',' << linklab::to_string(c.method) << ',';
    if (c.gamma_avg_db) {
      std::cout << *c.gamma_avg_db;
    } else {
      std::cout << "none";
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linklab: outage and DPSK BER of multi-hop hybrid FSO/RF relaying.\n"
               "SNRs in configs and output are power dB: linear = 10^(dB/10).\n"
               "LINKLAB_THREADS caps the worker count."};
  app.set_version_flag("--version", std::string(LINKLAB_VERSION));
  app.require_subcommand(1);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "evaluate a sweep and write <preset>.csv/.json");
  run_cmd->add_option("--config", run.config, "JSON run configuration")->required();
  run_cmd->add_option("--preset", run.preset, "figure preset (fig2..fig7); replaces the config's curves")
      ->check(CLI::IsMember(linklab::preset_names()));
  run_cmd->add_option("--out-dir", run.out_dir, "output directory")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Monte-Carlo seed");
  run_cmd->add_option("--methods", run.methods,
                      "comma list of closed,series,asymptotic,quadrature,mc");
  run_cmd->add_option("--trials", run.trials, "Monte-Carlo trials per point")
      ->check(CLI::PositiveNumber);

  std::string record;
  double target = 1e-4;
  CLI::App* cross_cmd =
      app.add_subcommand("crossings", "SNR (dB) at which each curve of a run record hits a target");
  cross_cmd->add_option("--record", record, "run record JSON written by 'run'")->required();
  cross_cmd->add_option("--target", target, "target probability")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  if (*run_cmd) return do_run(run);
  return do_crossings(record, target);
}
