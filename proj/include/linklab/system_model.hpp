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


// Hop-level and end-to-end SNR distributions: N-antenna selection combining
// on the first (RF) hop, FSO/RF selection on every relay hop, and the serial
// product over hops.

#pragma once

#include "linklab/channel_models.hpp"

#include <memory>
#include <variant>

namespace linklab {

struct Topology {
  int n_antennas = 1;        // N
  int n_relays = 0;          // M
  double threshold_snr = 0;  // γ_th, linear

  void validate() const;
};

/// Average branch SNRs. mean_snr_fso already contains η²; eta is kept for
/// reporting and for from_noise().
struct LinkBudget {
  double mean_snr_fso = 1.0;
  double mean_snr_rf = 1.0;
  double eta = 1.0;

  /// γ̄_FSO = E[x²]η²/σ²_FSO, γ̄_RF = E[x²]/σ²_RF.
  static LinkBudget from_noise(double signal_power, double eta, double noise_fso,
                               double noise_rf);
  void validate() const;
};

using FsoModel = std::variant<GammaGammaPE, NegExp>;

/// Immutable system description. The budget's mean SNRs are written into
/// the channel models on construction, so the two never disagree.
class SystemConfig {
 public:
  SystemConfig(Topology topology, LinkBudget budget, FsoModel fso,
               int truncation = kDefaultTruncation);

  const Topology& topology() const { return topology_; }
  const LinkBudget& budget() const { return budget_; }
  const FsoModel& fso() const { return fso_; }
  const RayleighRF& rf() const { return rf_; }
  int truncation() const { return truncation_; }

  bool is_gg_pe() const { return std::holds_alternative<GammaGammaPE>(fso_); }
  const GammaGammaPE& gg_pe() const { return std::get<GammaGammaPE>(fso_); }
  const NegExp& negexp() const { return std::get<NegExp>(fso_); }
  /// Cached series evaluator (Gamma-Gamma model only).
  const GgPeSeries<Quad>& series() const;

  SystemConfig with_threshold(double threshold_snr) const;
  SystemConfig with_topology(int n_antennas, int n_relays) const;
  SystemConfig with_mean_snr(double mean_snr_fso, double mean_snr_rf) const;

 private:
  Topology topology_;
  LinkBudget budget_;
  FsoModel fso_;
  RayleighRF rf_;
  int truncation_;
  std::shared_ptr<const GgPeSeries<Quad>> series_;
};

/// FSO branch CDF (series/quadrature dispatch for Gamma-Gamma).
double fso_cdf(double gamma, const SystemConfig& cfg);
CdfEvaluation fso_cdf_eval(double gamma, const SystemConfig& cfg);

double first_hop_cdf(double gamma, const SystemConfig& cfg);
double relay_hop_cdf(double gamma, const SystemConfig& cfg);

/// 1 - (1 - F₁(γ))(1 - F_j(γ))^M at threshold γ.
double end_to_end_outage_at(const SystemConfig& cfg, double gamma);
/// end_to_end_outage_at(cfg, cfg.topology().threshold_snr).
double end_to_end_outage(const SystemConfig& cfg);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace linklab
