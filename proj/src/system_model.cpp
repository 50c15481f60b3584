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


#include "linklab/system_model.hpp"

#include <algorithm>
#include <cmath>

namespace linklab {

void Topology::validate() const {
  if (n_antennas < 1) {
    throw std::domain_error("Topology: N must be >= 1");
  }
  if (n_relays < 0) {
    throw std::domain_error("Topology: M must be >= 0");
  }
  if (!std::isfinite(threshold_snr) || threshold_snr < 0.0) {
    throw std::domain_error("Topology: threshold SNR must be finite and >= 0");
  }
}

LinkBudget LinkBudget::from_noise(double signal_power, double eta, double noise_fso,
                                  double noise_rf) {
  LinkBudget b{signal_power * eta * eta / noise_fso, signal_power / noise_rf, eta};
  b.validate();
  return b;
}

void LinkBudget::validate() const {
  for (double v : {mean_snr_fso, mean_snr_rf, eta}) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw std::domain_error("LinkBudget: mean SNRs and eta must be finite and > 0");
    }
  }
}

namespace {

FsoModel retarget(const FsoModel& m, double mean_snr) {
  if (const auto* gg = std::get_if<GammaGammaPE>(&m)) {
    return gg->with_mean_snr(mean_snr);
  }
  const NegExp& ne = std::get<NegExp>(m);
  return NegExp(ne.lambda(), mean_snr);
}

}  // namespace

SystemConfig::SystemConfig(Topology topology, LinkBudget budget, FsoModel fso, int truncation)
    : topology_(topology),
      budget_(budget),
      fso_(retarget(fso, budget.mean_snr_fso)),
      rf_(budget.mean_snr_rf),
      truncation_(truncation) {
  topology_.validate();
  budget_.validate();
  if (truncation_ < 1) {
    throw std::domain_error("SystemConfig: truncation must be >= 1");
  }
  if (is_gg_pe()) {
    series_ = std::make_shared<const GgPeSeries<Quad>>(gg_pe(), truncation_);
  }
}

const GgPeSeries<Quad>& SystemConfig::series() const {
  if (!series_) {
    throw std::logic_error("SystemConfig::series: FSO model is not Gamma-Gamma");
  }
  return *series_;
}

SystemConfig SystemConfig::with_threshold(double threshold_snr) const {
  SystemConfig out = *this;
  out.topology_.threshold_snr = threshold_snr;
  out.topology_.validate();
  return out;
}

SystemConfig SystemConfig::with_topology(int n_antennas, int n_relays) const {
  SystemConfig out = *this;
  out.topology_.n_antennas = n_antennas;
  out.topology_.n_relays = n_relays;
  out.topology_.validate();
  return out;
}

SystemConfig SystemConfig::with_mean_snr(double mean_snr_fso, double mean_snr_rf) const {
  LinkBudget b = budget_;
  b.mean_snr_fso = mean_snr_fso;
  b.mean_snr_rf = mean_snr_rf;
  return SystemConfig(topology_, b, fso_, truncation_);
}

CdfEvaluation fso_cdf_eval(double gamma, const SystemConfig& cfg) {
  if (cfg.is_gg_pe()) {
    return gg_pe_cdf(gamma, cfg.series());
  }
  return {negexp_cdf(gamma, cfg.negexp()), CdfMethod::closed, 0, 0.0};
}

double fso_cdf(double gamma, const SystemConfig& cfg) { return fso_cdf_eval(gamma, cfg).value; }

double first_hop_cdf(double gamma, const SystemConfig& cfg) {
  const double f = rayleigh_cdf(gamma, cfg.rf());
  const int n = cfg.topology().n_antennas;
  return n == 1 ? f : std::pow(f, n);
}

double relay_hop_cdf(double gamma, const SystemConfig& cfg) {
  const double rf = rayleigh_cdf(gamma, cfg.rf());
  if (rf == 0.0) {
    return 0.0;
  }
  return fso_cdf(gamma, cfg) * rf;
}

double end_to_end_outage_at(const SystemConfig& cfg, double gamma) {
  const double f1 = first_hop_cdf(gamma, cfg);
  const int m = cfg.topology().n_relays;
  if (m == 0) {
    return f1;
  }
  const double fj = relay_hop_cdf(gamma, cfg);
  // log of the all-hops-up probability; expm1 keeps small outages accurate.
  const double log_up = std::log1p(-f1) + m * std::log1p(-fj);
  return std::clamp(-std::expm1(log_up), 0.0, 1.0);
}

double end_to_end_outage(const SystemConfig& cfg) {
  return end_to_end_outage_at(cfg, cfg.topology().threshold_snr);
}

}  // namespace linklab
