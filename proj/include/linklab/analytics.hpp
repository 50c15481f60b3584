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


// Outage probability and DPSK bit-error-rate evaluators. The expanded
// (binomial) forms alternate in sign and cancel by many orders at high SNR,
// so they are accumulated in Quad with compensated summation; each result
// reports its cancellation ratio.

#pragma once

#include "linklab/system_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linklab {

enum class Method { closed, series, asymptotic, quadrature, montecarlo };

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct Diagnostics {
  std::optional<int> terms_used;
  std::optional<double> err_estimate;
  std::optional<double> ci_halfwidth;
  double cancellation = 1.0;  // max |term| / |result|
  bool converged = true;
  std::string note;
};

struct EvalResult {
  double value = 0.0;
  Method method = Method::closed;
  Diagnostics diagnostics;
};

/// C(N,k) C(M,t) C(t,u) (-1)^{k+t+u}.
double omega_weight(int n, int m, int k, int t, int u);

/// Expansion of F_FSO(γ)^t for the Gamma-Gamma model as a sum of
/// half-integer-step power series in r = γ/γ̄_FSO. Built once per config
/// for t = 0..max_power.
class FsoPowerExpansion {
 public:
  FsoPowerExpansion(const SystemConfig& cfg, int max_power, int truncation);

  int max_power() const { return max_power_; }
  int truncation() const { return truncation_; }
  /// Pieces whose sum is F^t; the binomial and X₀ factors are already folded
  /// into the coefficients.
  const std::vector<PowerSeries<Quad>>& pieces(int t) const { return pieces_.at(t); }

  struct Value {
    Quad value{0};
    Quad tail{0};      // magnitude of the last retained terms
    Quad abs_sum{0};
  };
  /// F(γ)^t by summing the expansion.
  Value evaluate(int t, double gamma) const;
  /// ∫₀^∞ e^{-aγ} F(γ)^t dγ, term by term.
  Value laplace(int t, const Quad& a) const;

 private:
  int max_power_;
  int truncation_;
  double mean_snr_;
  std::vector<std::vector<PowerSeries<Quad>>> pieces_;
  std::vector<std::vector<VectorX<Quad>>> log_gamma_;  // ln Γ(p_n + 1) per piece
};

// Outage ---------------------------------------------------------------------

/// Binomial expansion over (k, t, u) with the Gamma-Gamma CDF raised to t.
EvalResult outage_gg_pe(const SystemConfig& cfg);
/// Binomial expansion over (k, t, u, v) for the Negative-Exponential model.
EvalResult outage_negexp(const SystemConfig& cfg);
/// Fully expanded series form. Flags non-convergence instead of throwing.
EvalResult outage_gg_pe_series(const SystemConfig& cfg, int K = kDefaultTruncation);
/// Leading small-γ power law substituted for the FSO CDF.
EvalResult outage_asymptotic(const SystemConfig& cfg);

// BER (DPSK, conditional error ½e^{-γ}) --------------------------------------

/// ½ ∫₀^∞ e^{-γ} P_out(γ) dγ by quadrature; the reference for the others.
EvalResult ber_dpsk_quadrature(const SystemConfig& cfg, const QuadratureSpec& spec = {});
EvalResult ber_gg_pe_series(const SystemConfig& cfg, int K = kDefaultTruncation);
EvalResult ber_gg_pe_asymptotic(const SystemConfig& cfg);
EvalResult ber_negexp_closed(const SystemConfig& cfg);

}  // namespace linklab
