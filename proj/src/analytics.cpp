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


#include "linklab/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

namespace linklab {

namespace {

constexpr double kSeriesRelTolerance = 1e-8;

Quad qexp(const Quad& x) { return boost::multiprecision::exp(x); }
Quad qlog(const Quad& x) { return boost::multiprecision::log(x); }
Quad qabs(const Quad& x) { return boost::multiprecision::abs(x); }

/// 1 + Σ_{k=1}^{N} Σ_{t=0}^{M} Σ_{u=0}^{t} Ω g(t, k+u).
template <typename G>
CompensatedSum<Quad> expand(int n, int m, G&& g) {
  CompensatedSum<Quad> sum;
  sum.add(Quad(1));
  for (int k = 1; k <= n; ++k) {
    for (int t = 0; t <= m; ++t) {
      for (int u = 0; u <= t; ++u) {
        sum.add(Quad(omega_weight(n, m, k, t, u)) * g(t, k + u));
      }
    }
  }
  return sum;
}

/// Σ |Ω| w(t, k+u); the absolute error weight of an expansion.
template <typename W>
Quad expand_abs(int n, int m, W&& w) {
  Quad s(0);
  for (int k = 1; k <= n; ++k) {
    for (int t = 0; t <= m; ++t) {
      for (int u = 0; u <= t; ++u) {
        s += qabs(Quad(omega_weight(n, m, k, t, u))) * w(t, k + u);
      }
    }
  }
  return s;
}

void require_gg(const SystemConfig& cfg, const char* who) {
  if (!cfg.is_gg_pe()) {
    throw std::invalid_argument(std::string(who) + ": requires the Gamma-Gamma pointing-error model");
  }
}

void require_negexp(const SystemConfig& cfg, const char* who) {
  if (cfg.is_gg_pe()) {
    throw std::invalid_argument(std::string(who) + ": requires the Negative-Exponential model");
  }
}

double clamp_probability(const Quad& v, double hi = 1.0) {
  return std::clamp(to_double(v), 0.0, hi);
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::closed:
      return "closed";
    case Method::series:
      return "series";
    case Method::asymptotic:
      return "asymptotic";
    case Method::quadrature:
      return "quadrature";
    case Method::montecarlo:
      return "mc";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::closed, Method::series, Method::asymptotic, Method::quadrature,
                   Method::montecarlo}) {
    if (name == to_string(m)) return m;
  }
  if (name == "montecarlo") return Method::montecarlo;
  return std::nullopt;
}

double omega_weight(int n, int m, int k, int t, int u) {
  const double w = binomial(n, k) * binomial(m, t) * binomial(t, u);
  return ((k + t + u) % 2 == 0) ? w : -w;
}

// ---------------------------------------------------------------------------
// FsoPowerExpansion
// ---------------------------------------------------------------------------

FsoPowerExpansion::FsoPowerExpansion(const SystemConfig& cfg, int max_power, int truncation)
    : max_power_(max_power), truncation_(truncation) {
  require_gg(cfg, "FsoPowerExpansion");
  if (max_power < 0 || truncation < 1) {
    throw std::domain_error("FsoPowerExpansion: need max_power >= 0 and truncation >= 1");
  }
  mean_snr_ = cfg.gg_pe().mean_snr();
  const SeriesCoefficients<Quad> c =
      truncation == cfg.series().coefficients().truncation
          ? cfg.series().coefficients()
          : gg_pe_series_coeffs<Quad>(cfg.gg_pe(), truncation);
  const PowerSeries<Quad> y = c.y_series();
  const PowerSeries<Quad> z = c.z_series();
  std::vector<PowerSeries<Quad>> ypow;
  std::vector<PowerSeries<Quad>> zpow;
  for (int j = 0; j <= max_power; ++j) {
    ypow.push_back(series_pow(y, j, truncation));
    zpow.push_back(series_pow(z, j, truncation));
  }
  pieces_.resize(max_power + 1);
  log_gamma_.resize(max_power + 1);
  for (int t = 0; t <= max_power; ++t) {
    for (int k1 = 0; k1 <= t; ++k1) {
      const Quad x0_pow = boost::multiprecision::pow(c.x0, t - k1);
      for (int k2 = 0; k2 <= k1; ++k2) {
        PowerSeries<Quad> p = series_mul(ypow[k1 - k2], zpow[k2], truncation);
        p.exponent_offset += Quad(c.x0_exponent) * Quad(t - k1);
        p.coefficients *= Quad(binomial(t, k1) * binomial(k1, k2)) * x0_pow;
        VectorX<Quad> lg(p.size());
        for (Eigen::Index n = 0; n < p.size(); ++n) {
          lg(n) = ln_gamma(Quad(p.exponent(n) + Quad(1)));
        }
        pieces_[t].push_back(std::move(p));
        log_gamma_[t].push_back(std::move(lg));
      }
    }
  }
}

FsoPowerExpansion::Value FsoPowerExpansion::evaluate(int t, double gamma) const {
  Value out;
  if (t == 0) {
    out.value = Quad(1);
    out.abs_sum = Quad(1);
    return out;
  }
  if (gamma <= 0.0) {
    return out;
  }
  const Quad r = Quad(gamma) / Quad(mean_snr_);
  const Quad lr = qlog(r);
  CompensatedSum<Quad> sum;
  for (const PowerSeries<Quad>& p : pieces_.at(t)) {
    const Quad s = qexp(Quad(p.step) * lr);
    Quad rp = qexp(p.exponent_offset * lr);
    Quad last(0);
    for (Eigen::Index n = 0; n < p.size(); ++n) {
      const Quad term = p.coefficients(n) * rp;
      sum.add(term);
      if (n + 2 >= p.size()) last = std::max(last, qabs(term));
      rp *= s;
    }
    if (p.size() == truncation_) out.tail += last;
  }
  out.value = sum.value();
  out.abs_sum = sum.abs_sum();
  return out;
}

FsoPowerExpansion::Value FsoPowerExpansion::laplace(int t, const Quad& qa) const {
  Value out;
  if (t == 0) {
    out.value = Quad(1) / qa;
    out.abs_sum = out.value;
    return out;
  }
  const Quad la = qlog(qa);
  const Quad lg = qlog(Quad(mean_snr_));
  CompensatedSum<Quad> sum;
  const auto& pieces = pieces_.at(t);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const PowerSeries<Quad>& p = pieces[i];
    const VectorX<Quad>& lgam = log_gamma_[t][i];
    Quad last(0);
    for (Eigen::Index n = 0; n < p.size(); ++n) {
      const Quad c = p.coefficients(n);
      if (c == Quad(0)) continue;
      const Quad e = p.exponent(n);
      // c Γ(e+1) / (a^{e+1} γ̄^e)
      const Quad mag = qexp(qlog(qabs(c)) + lgam(n) - (e + Quad(1)) * la - e * lg);
      const Quad term = c < Quad(0) ? Quad(-mag) : mag;
      sum.add(term);
      if (n + 2 >= p.size()) last = std::max(last, mag);
    }
    if (p.size() == truncation_) out.tail += last;
  }
  out.value = sum.value();
  out.abs_sum = sum.abs_sum();
  return out;
}

// ---------------------------------------------------------------------------
// Outage
// ---------------------------------------------------------------------------

EvalResult outage_gg_pe(const SystemConfig& cfg) {
  require_gg(cfg, "outage_gg_pe");
  const Topology& top = cfg.topology();
  const double gth = top.threshold_snr;
  EvalResult out;
  out.method = Method::closed;
  if (gth == 0.0) {
    out.diagnostics.err_estimate = 0.0;
    return out;
  }
  SeriesEvaluation e;
  Quad f(0);
  double f_err = 0.0;
  int terms = 0;
  if (cfg.gg_pe().argument(gth) <= kSeriesRadius &&
      (f = cfg.series().cdf_scalar(gth, &e), e.converged)) {
    f_err = e.error_estimate;
    terms = e.terms;
  } else {
    f = Quad(gg_pe_cdf_quadrature(gth, cfg.gg_pe()));
    f_err = 1e-13;
    out.diagnostics.note = "fso cdf by quadrature";
  }
  if (f > Quad(1)) f = Quad(1);
  if (f < Quad(0)) f = Quad(0);
  const double x = gth / cfg.rf().mean_snr();
  std::vector<Quad> ft(top.n_relays + 1);
  ft[0] = Quad(1);  // 0^0 := 1
  for (int t = 1; t <= top.n_relays; ++t) ft[t] = ft[t - 1] * f;
  const auto sum = expand(top.n_antennas, top.n_relays,
                          [&](int t, int s) { return qexp(-Quad(s) * Quad(x)) * ft[t]; });
  const Quad sens = expand_abs(top.n_antennas, top.n_relays, [&](int t, int s) {
    return t == 0 ? Quad(0) : qexp(-Quad(s) * Quad(x)) * Quad(t) * ft[t - 1];
  });
  out.value = clamp_probability(sum.value());
  out.diagnostics.terms_used = terms;
  out.diagnostics.err_estimate = to_double(Quad(sens * Quad(f_err)));
  out.diagnostics.cancellation = sum.cancellation();
  return out;
}

EvalResult outage_negexp(const SystemConfig& cfg) {
  require_negexp(cfg, "outage_negexp");
  const Topology& top = cfg.topology();
  const NegExp& ne = cfg.negexp();
  const double x = top.threshold_snr / cfg.rf().mean_snr();
  const double b = ne.lambda() * std::sqrt(top.threshold_snr / ne.mean_snr());
  CompensatedSum<Quad> sum;
  sum.add(Quad(1));
  for (int k = 1; k <= top.n_antennas; ++k) {
    for (int t = 0; t <= top.n_relays; ++t) {
      for (int u = 0; u <= t; ++u) {
        const Quad w = Quad(omega_weight(top.n_antennas, top.n_relays, k, t, u)) *
                       qexp(-Quad(k + u) * Quad(x));
        for (int v = 0; v <= t; ++v) {
          const double lam = (v % 2 == 0 ? 1.0 : -1.0) * binomial(t, v);
          sum.add(w * Quad(lam) * qexp(-Quad(v) * Quad(b)));
        }
      }
    }
  }
  EvalResult out;
  out.method = Method::closed;
  out.value = clamp_probability(sum.value());
  out.diagnostics.cancellation = sum.cancellation();
  return out;
}

EvalResult outage_gg_pe_series(const SystemConfig& cfg, int K) {
  require_gg(cfg, "outage_gg_pe_series");
  const Topology& top = cfg.topology();
  const double gth = top.threshold_snr;
  EvalResult out;
  out.method = Method::series;
  out.diagnostics.terms_used = K;
  if (gth == 0.0) {
    out.diagnostics.err_estimate = 0.0;
    return out;
  }
  const FsoPowerExpansion ex(cfg, top.n_relays, K);
  std::vector<FsoPowerExpansion::Value> ft;
  for (int t = 0; t <= top.n_relays; ++t) ft.push_back(ex.evaluate(t, gth));
  const double x = gth / cfg.rf().mean_snr();
  const auto sum = expand(top.n_antennas, top.n_relays,
                          [&](int t, int s) { return qexp(-Quad(s) * Quad(x)) * ft[t].value; });
  const Quad err = expand_abs(top.n_antennas, top.n_relays, [&](int t, int s) {
    return qexp(-Quad(s) * Quad(x)) * (ft[t].tail + ft[t].abs_sum * epsilon<Quad>() * Quad(16 * K));
  });
  const Quad value = sum.value();
  out.value = clamp_probability(value);
  out.diagnostics.err_estimate = to_double(err);
  out.diagnostics.cancellation = sum.cancellation();
  const bool in_radius = cfg.gg_pe().argument(gth) <= kSeriesRadius;
  out.diagnostics.converged =
      in_radius && err <= Quad(kSeriesRelTolerance) * qabs(value) && value >= Quad(0);
  if (!out.diagnostics.converged) {
    out.diagnostics.note = in_radius ? "series not converged at truncation"
                                     : "threshold outside series radius";
  }
  return out;
}

EvalResult outage_asymptotic(const SystemConfig& cfg) {
  require_gg(cfg, "outage_asymptotic");
  const Topology& top = cfg.topology();
  const double gth = top.threshold_snr;
  const AsymptoticBranch br = gg_pe_asymptotic_branch(cfg.gg_pe());
  EvalResult out;
  out.method = Method::asymptotic;
  out.diagnostics.note = to_string(br.branch);
  if (gth == 0.0) {
    return out;
  }
  const Quad f = qexp(Quad(br.log_coefficient) + Quad(br.exponent) * qlog(Quad(gth)));
  std::vector<Quad> ft(top.n_relays + 1);
  ft[0] = Quad(1);
  for (int t = 1; t <= top.n_relays; ++t) ft[t] = ft[t - 1] * f;
  const double x = gth / cfg.rf().mean_snr();
  const auto sum = expand(top.n_antennas, top.n_relays,
                          [&](int t, int s) { return qexp(-Quad(s) * Quad(x)) * ft[t]; });
  out.value = clamp_probability(sum.value());
  out.diagnostics.cancellation = sum.cancellation();
  return out;
}

// ---------------------------------------------------------------------------
// BER
// ---------------------------------------------------------------------------

EvalResult ber_dpsk_quadrature(const SystemConfig& cfg, const QuadratureSpec& spec) {
  EvalResult out;
  out.method = Method::quadrature;
  auto f = [&](double g) { return end_to_end_outage_at(cfg, g); };
  QuadratureResult r;
  try {
    r = laplace_quadrature(f, spec);
  } catch (const QuadratureError& e) {
    r = e.best();
    out.diagnostics.converged = false;
    out.diagnostics.note = e.what();
  }
  out.value = std::clamp(0.5 * r.value, 0.0, 0.5);
  out.diagnostics.terms_used = r.nodes;
  out.diagnostics.err_estimate = 0.5 * r.error_estimate;
  return out;
}

EvalResult ber_gg_pe_series(const SystemConfig& cfg, int K) {
  require_gg(cfg, "ber_gg_pe_series");
  const Topology& top = cfg.topology();
  const FsoPowerExpansion ex(cfg, top.n_relays, K);
  const int smax = top.n_antennas + top.n_relays;
  // Laplace transforms are shared by every (k, u) with the same k + u.
  std::vector<std::vector<FsoPowerExpansion::Value>> lt(top.n_relays + 1);
  for (int t = 0; t <= top.n_relays; ++t) {
    lt[t].resize(smax + 1);
    for (int s = 1; s <= smax; ++s) {
      lt[t][s] = ex.laplace(t, Quad(1) + Quad(s) / Quad(cfg.rf().mean_snr()));
    }
  }
  const auto sum =
      expand(top.n_antennas, top.n_relays, [&](int t, int s) { return lt[t][s].value; });
  const Quad err = expand_abs(top.n_antennas, top.n_relays, [&](int t, int s) {
    return lt[t][s].tail + lt[t][s].abs_sum * epsilon<Quad>() * Quad(16 * K);
  });
  const Quad value = Quad(0.5) * sum.value();
  EvalResult out;
  out.method = Method::series;
  out.value = clamp_probability(value, 0.5);
  out.diagnostics.terms_used = K;
  out.diagnostics.err_estimate = to_double(Quad(Quad(0.5) * err));
  out.diagnostics.cancellation = sum.cancellation();
  out.diagnostics.converged =
      Quad(0.5) * err <= Quad(kSeriesRelTolerance) * qabs(value) && value >= Quad(0);
  if (!out.diagnostics.converged) {
    out.diagnostics.note = "series not converged at truncation";
  }
  return out;
}

EvalResult ber_gg_pe_asymptotic(const SystemConfig& cfg) {
  require_gg(cfg, "ber_gg_pe_asymptotic");
  const Topology& top = cfg.topology();
  const AsymptoticBranch br = gg_pe_asymptotic_branch(cfg.gg_pe());
  const Quad lc(br.log_coefficient);
  const auto sum = expand(top.n_antennas, top.n_relays, [&](int t, int s) {
    const Quad a = Quad(1) + Quad(s) / Quad(cfg.rf().mean_snr());
    // ∫ e^{-aγ} (c γ^e)^t dγ = c^t Γ(et+1) / a^{et+1}
    const Quad p = Quad(br.exponent) * Quad(t);
    return qexp(Quad(t) * lc + ln_gamma(Quad(p + Quad(1))) - (p + Quad(1)) * qlog(a));
  });
  EvalResult out;
  out.method = Method::asymptotic;
  out.value = clamp_probability(Quad(Quad(0.5) * sum.value()), 0.5);
  out.diagnostics.cancellation = sum.cancellation();
  out.diagnostics.note = to_string(br.branch);
  return out;
}

EvalResult ber_negexp_closed(const SystemConfig& cfg) {
  require_negexp(cfg, "ber_negexp_closed");
  const Topology& top = cfg.topology();
  const NegExp& ne = cfg.negexp();
  const Quad root_g = boost::multiprecision::sqrt(Quad(ne.mean_snr()));
  CompensatedSum<Quad> sum;
  sum.add(Quad(1));
  for (int k = 1; k <= top.n_antennas; ++k) {
    for (int t = 0; t <= top.n_relays; ++t) {
      for (int u = 0; u <= t; ++u) {
        const Quad w = Quad(omega_weight(top.n_antennas, top.n_relays, k, t, u));
        const Quad a = Quad(1) + Quad(k + u) / Quad(cfg.rf().mean_snr());
        for (int v = 0; v <= t; ++v) {
          const double lam = (v % 2 == 0 ? 1.0 : -1.0) * binomial(t, v);
          const Quad b = Quad(ne.lambda()) * Quad(v) / root_g;
          sum.add(w * Quad(lam) * laplace_exp_sqrt(a, b));
        }
      }
    }
  }
  EvalResult out;
  out.method = Method::closed;
  out.value = clamp_probability(Quad(Quad(0.5) * sum.value()), 0.5);
  out.diagnostics.cancellation = sum.cancellation();
  return out;
}

}  // namespace linklab
