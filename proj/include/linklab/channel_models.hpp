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

// Per-branch SNR distributions: Rayleigh RF, Negative-Exponential FSO and
// Gamma-Gamma FSO with zero-boresight pointing error. CDFs come in closed,
// series, asymptotic and quadrature flavours; samplers feed the Monte-Carlo
// oracle.

#pragma once

#include "linklab/random.hpp"
#include "linklab/scalar.hpp"
#include "linklab/special_functions.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace linklab {

inline constexpr int kDefaultTruncation = 60;
/// Largest Meijer-G argument αβκ√(γ/γ̄) at which the power series is used.
inline constexpr double kSeriesRadius = 30.0;

/// Raised when the power series cannot be trusted at the requested point;
/// callers should fall back to gg_pe_cdf_quadrature.
class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RayleighRF {
 public:
  explicit RayleighRF(double mean_snr);
  double mean_snr() const { return mean_snr_; }

 private:
  double mean_snr_;
};

class NegExp {
 public:
  NegExp(double lambda, double mean_snr);
  double lambda() const { return lambda_; }
  double mean_snr() const { return mean_snr_; }

 private:
  double lambda_;
  double mean_snr_;
};

/// Gamma-Gamma turbulence (α, β) with zero-boresight pointing error ξ.
/// κ defaults to ξ²/(ξ²+1). When a parameter separation (α-β, α-ξ², β-ξ²)
/// sits within 1e-9 of an integer, the series coefficients hit a Gamma pole;
/// construction then nudges β (or α, if β is not involved) by 1e-6 and
/// records it.
class GammaGammaPE {
 public:
  GammaGammaPE(double alpha, double beta, double xi, double mean_snr,
               std::optional<double> kappa = std::nullopt);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double xi() const { return xi_; }
  double xi2() const { return xi_ * xi_; }
  double kappa() const { return kappa_; }
  double mean_snr() const { return mean_snr_; }

  /// αβκ, the scale of the Meijer-G argument per unit √(γ/γ̄).
  double argument_scale() const { return alpha_ * beta_ * kappa_; }
  /// αβκ√(γ/γ̄).
  double argument(double gamma) const;

  bool perturbed() const { return !perturbation_.empty(); }
  const std::string& perturbation() const { return perturbation_; }

  GammaGammaPE with_mean_snr(double mean_snr) const;

  static double default_kappa(double xi) { return xi * xi / (xi * xi + 1.0); }

 private:
  double alpha_;
  double beta_;
  double xi_;
  double kappa_;
  double mean_snr_;
  bool kappa_overridden_ = false;
  std::string perturbation_;
};

// ---------------------------------------------------------------------------
// Closed-form CDFs
// ---------------------------------------------------------------------------

double rayleigh_cdf(double gamma, const RayleighRF& ch);
double negexp_cdf(double gamma, const NegExp& ch);

// ---------------------------------------------------------------------------
// Gamma-Gamma with pointing error: power series
// ---------------------------------------------------------------------------

/// CDF(γ) = x0 r^{ξ²/2} + Σ y_n r^{(n+α)/2} + Σ z_n r^{(n+β)/2}, r = γ/γ̄.
template <typename Scalar>
struct SeriesCoefficients {
  Scalar x0{0};
  VectorX<Scalar> y;
  VectorX<Scalar> z;
  int truncation = 0;
  double x0_exponent = 0.0;  // ξ²/2
  double y_exponent = 0.0;   // α/2
  double z_exponent = 0.0;   // β/2

  PowerSeries<Scalar> x0_series() const {
    VectorX<Scalar> c(1);
    c(0) = x0;
    return PowerSeries<Scalar>(Scalar(x0_exponent), std::move(c), 0.5);
  }
  PowerSeries<Scalar> y_series() const { return PowerSeries<Scalar>(Scalar(y_exponent), y, 0.5); }
  PowerSeries<Scalar> z_series() const { return PowerSeries<Scalar>(Scalar(z_exponent), z, 0.5); }
};

namespace detail {

/// log|c| and sign of one ladder of the CDF expansion:
///   ξ² Γ(q-p) (p-ξ²)_n / ((n+p) Γ(α)Γ(β) (ξ²-p) (1-ξ²+p)_n (1-q+p)_n n!) (αβκ)^{n+p}
/// with (p, q) = (α, β) for the y ladder and (β, α) for the z ladder.
template <typename Scalar>
VectorX<Scalar> ladder(const Scalar& p, const Scalar& q, const Scalar& xi2,
                       const Scalar& lg_alpha_beta, const Scalar& log_c, int K) {
  using std::abs;
  using std::exp;
  using std::log;
  const SignedLog<Scalar> g = signed_ln_gamma(Scalar(q - p));
  const Scalar sep = xi2 - p;
  Scalar log_base = log(xi2) + g.log_abs - lg_alpha_beta - log(abs(sep)) + p * log_c;
  int sign_base = g.sign * (sep > Scalar(0) ? 1 : -1);

  VectorX<Scalar> out(K);
  Scalar lp(0);  // log|(p-ξ²)_n| - log|(1-ξ²+p)_n| - log|(1-q+p)_n| - log n! + n log c
  int sp = 1;
  for (int n = 0; n < K; ++n) {
    const Scalar log_mag = log_base + lp - log(Scalar(n) + p);
    out(n) = Scalar(sign_base * sp) * exp(log_mag);
    // advance to n+1
    const Scalar f1 = p - xi2 + Scalar(n);
    const Scalar f2 = Scalar(1) - xi2 + p + Scalar(n);
    const Scalar f3 = Scalar(1) - q + p + Scalar(n);
    lp += log(abs(f1)) - log(abs(f2)) - log(abs(f3)) - log(Scalar(n + 1)) + log_c;
    if (f1 < Scalar(0)) sp = -sp;
    if (f2 < Scalar(0)) sp = -sp;
    if (f3 < Scalar(0)) sp = -sp;
  }
  return out;
}

}  // namespace detail

/// Coefficients X₀, Yₙ, Zₙ (n < K) of the CDF expansion, built in log-space
/// and exponentiated once each.
template <typename Scalar>
SeriesCoefficients<Scalar> gg_pe_series_coeffs(const GammaGammaPE& ch, int K) {
  using std::log;
  if (K < 1) {
    throw std::domain_error("gg_pe_series_coeffs: truncation must be >= 1");
  }
  const Scalar alpha(ch.alpha());
  const Scalar beta(ch.beta());
  // ξ² as rounded in double, so the exponents (held as double) and the
  // coefficients describe exactly the same function.
  const Scalar xi2(ch.xi2());
  const Scalar c = alpha * beta * Scalar(ch.kappa());
  const Scalar log_c = log(c);
  const Scalar lg_ab = ln_gamma(alpha) + ln_gamma(beta);

  SeriesCoefficients<Scalar> s;
  s.truncation = K;
  s.x0_exponent = ch.xi2() / 2.0;
  s.y_exponent = ch.alpha() / 2.0;
  s.z_exponent = ch.beta() / 2.0;

  const SignedLog<Scalar> ga = signed_ln_gamma(Scalar(alpha - xi2));
  const SignedLog<Scalar> gb = signed_ln_gamma(Scalar(beta - xi2));
  s.x0 = SignedLog<Scalar>{ga.log_abs + gb.log_abs - lg_ab + xi2 * log_c, ga.sign * gb.sign}.value();
  s.y = detail::ladder(alpha, beta, xi2, lg_ab, log_c, K);
  s.z = detail::ladder(beta, alpha, xi2, lg_ab, log_c, K);
  return s;
}

/// Outcome of one series evaluation together with its trust diagnostics.
struct SeriesEvaluation {
  double value = 0.0;
  int terms = 0;               // coefficients per sub-series
  double argument = 0.0;       // αβκ√(γ/γ̄)
  double tail = 0.0;           // |last retained term| / |sum|
  double cancellation = 1.0;   // Σ|term| / |sum|
  double error_estimate = 0.0; // tail + rounding estimate, absolute
  bool converged = false;
};

/// Cached series evaluator for one channel. Coefficients are computed once;
/// cdf()/pdf() are const and thread-safe.
template <typename Scalar>
class GgPeSeries {
 public:
  GgPeSeries(const GammaGammaPE& ch, int K = kDefaultTruncation)
      : channel_(ch), coeffs_(gg_pe_series_coeffs<Scalar>(ch, K)) {}

  const GammaGammaPE& channel() const { return channel_; }
  const SeriesCoefficients<Scalar>& coefficients() const { return coeffs_; }

  SeriesEvaluation cdf(double gamma) const { return evaluate(gamma, false); }
  /// Density in γ (not in γ/γ̄).
  SeriesEvaluation pdf(double gamma) const { return evaluate(gamma, true); }

  /// CDF value as Scalar (for analytics that keep extended precision).
  Scalar cdf_scalar(double gamma, SeriesEvaluation* diag = nullptr) const {
    Scalar v;
    SeriesEvaluation e = evaluate_impl(gamma, false, v);
    if (diag) *diag = e;
    return v;
  }

 private:
  SeriesEvaluation evaluate(double gamma, bool density) const {
    Scalar v;
    return evaluate_impl(gamma, density, v);
  }

  SeriesEvaluation evaluate_impl(double gamma, bool density, Scalar& value) const {
    using std::abs;
    using std::pow;
    using std::sqrt;
    if (gamma < 0.0 || std::isnan(gamma)) {
      throw std::domain_error("gg_pe series: gamma must be >= 0");
    }
    SeriesEvaluation e;
    e.terms = coeffs_.truncation;
    e.argument = channel_.argument(gamma);
    if (gamma == 0.0) {
      if (density) {
        throw std::domain_error("gg_pe_pdf: gamma must be > 0");
      }
      value = Scalar(0);
      e.converged = true;
      return e;
    }
    const Scalar r = Scalar(gamma) / Scalar(channel_.mean_snr());
    const Scalar s = sqrt(r);
    CompensatedSum<Scalar> sum;
    Scalar last_y(0);
    Scalar last_z(0);
    const int K = coeffs_.truncation;
    // Derivative weights: d/dr r^{e} = e r^{e-1}.
    auto weight = [&](const Scalar& exponent) {
      return density ? Scalar(exponent / r) : Scalar(1);
    };
    if (coeffs_.x0 != Scalar(0)) {
      sum.add(coeffs_.x0 * pow(r, Scalar(coeffs_.x0_exponent)) * weight(Scalar(coeffs_.x0_exponent)));
    }
    const Scalar ry = pow(r, Scalar(coeffs_.y_exponent));
    const Scalar rz = pow(r, Scalar(coeffs_.z_exponent));
    Scalar sn(1);
    for (int n = 0; n < K; ++n) {
      const Scalar ty = coeffs_.y(n) * ry * sn * weight(Scalar(coeffs_.y_exponent) + Scalar(0.5) * Scalar(n));
      const Scalar tz = coeffs_.z(n) * rz * sn * weight(Scalar(coeffs_.z_exponent) + Scalar(0.5) * Scalar(n));
      sum.add(ty);
      sum.add(tz);
      last_y = ty;
      last_z = tz;
      sn *= s;
    }
    value = sum.value();
    if (density) {
      value /= Scalar(channel_.mean_snr());
    }
    const Scalar mag = abs(sum.value());
    const Scalar last = abs(last_y) + abs(last_z);
    e.value = to_double(value);
    e.tail = mag > Scalar(0) ? to_double(Scalar(last / mag)) : 0.0;
    e.cancellation = mag > Scalar(0) ? to_double(Scalar(sum.abs_sum() / mag)) : 1.0;
    const double rounding = to_double(Scalar(sum.abs_sum() * epsilon<Scalar>())) * 4.0 * K;
    const double scale = density ? 1.0 / channel_.mean_snr() : 1.0;
    e.error_estimate = (to_double(last) + rounding) * scale;
    // Near the origin the density is unbounded, so rounding is judged relative to it there.
    const double size = std::max(1.0, to_double(mag));
    e.converged = e.argument <= kSeriesRadius && e.tail < 1e-14 && rounding < 1e-12 * size;
    return e;
  }

  GammaGammaPE channel_;
  SeriesCoefficients<Scalar> coeffs_;
};

/// Series density; outside the trusted region the mixture-integral density
/// is used instead. Throws SeriesError if the series has not converged
/// inside the radius at truncation K.
double gg_pe_pdf(double gamma, const GammaGammaPE& ch, int K = kDefaultTruncation);

/// Series CDF clamped to [0, 1]. Throws SeriesError outside the convergence
/// radius or when the series has not converged at K.
double gg_pe_cdf_series(double gamma, const GammaGammaPE& ch, int K = kDefaultTruncation);

/// CDF by quadrature of the Gamma-Gamma density mixed with the pointing-error
/// law (h_p has CDF u^{ξ²} on (0, 1]). Valid for all γ.
double gg_pe_cdf_quadrature(double gamma, const GammaGammaPE& ch);
double gg_pe_pdf_quadrature(double gamma, const GammaGammaPE& ch);

/// Unit-mean Gamma-Gamma irradiance density (Bessel-K form).
double gamma_gamma_pdf(double h, double alpha, double beta);

enum class CdfMethod { closed, series, asymptotic, quadrature };

struct CdfEvaluation {
  double value = 0.0;
  CdfMethod method = CdfMethod::closed;
  int terms = 0;
  double error_estimate = 0.0;
};

/// Series where trusted, quadrature elsewhere.
CdfEvaluation gg_pe_cdf(double gamma, const GgPeSeries<Quad>& series);
CdfEvaluation gg_pe_cdf(double gamma, const GammaGammaPE& ch, int K = kDefaultTruncation);

// ---------------------------------------------------------------------------
// Gamma-Gamma with pointing error: small-γ power law
// ---------------------------------------------------------------------------

enum class AsymptoticBranchKind { beta_dominant, xi_dominant, alpha_dominant };

/// F(γ) ≈ coefficient · γ^exponent as γ → 0; the 1/γ̄ factor is folded into
/// the coefficient.
struct AsymptoticBranch {
  AsymptoticBranchKind branch = AsymptoticBranchKind::beta_dominant;
  double coefficient = 0.0;
  double log_coefficient = 0.0;
  double exponent = 0.0;
};

const char* to_string(AsymptoticBranchKind kind);

/// Selects the branch by strict ordering of (α, β, ξ²); ties within 1e-9
/// raise std::domain_error.
AsymptoticBranch gg_pe_asymptotic_branch(const GammaGammaPE& ch);

struct AsymptoticValue {
  double value = 0.0;
  AsymptoticBranch branch;
};

AsymptoticValue gg_pe_cdf_asymptotic(double gamma, const GammaGammaPE& ch);

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

inline double rayleigh_snr_from_uniform(double u, const RayleighRF& ch) {
  return -ch.mean_snr() * std::log(u);
}

inline double negexp_snr_from_uniform(double u, const NegExp& ch) {
  const double l = std::log(u) / ch.lambda();
  return ch.mean_snr() * l * l;
}

template <UniformSource Rng>
double sample_rayleigh_snr(Rng& rng, const RayleighRF& ch) {
  return rayleigh_snr_from_uniform(rng.uniform(), ch);
}

template <UniformSource Rng>
double sample_negexp_snr(Rng& rng, const NegExp& ch) {
  return negexp_snr_from_uniform(rng.uniform(), ch);
}

/// γ = γ̄ (h_a h_p / κ)² with h_a = XY, X ~ Γ(α, 1/α), Y ~ Γ(β, 1/β), and
/// h_p = exp(-2r²/w²) for Rayleigh radial displacement r (σ_r = 1) and beam
/// width w = 2ξσ_r.
template <UniformSource Rng>
double sample_gg_pe_snr(Rng& rng, const GammaGammaPE& ch) {
  const double x = sample_gamma(rng, ch.alpha()) / ch.alpha();
  const double y = sample_gamma(rng, ch.beta()) / ch.beta();
  const double r2 = -2.0 * std::log(rng.uniform());
  const double w = 2.0 * ch.xi();
  const double hp = std::exp(-2.0 * r2 / (w * w));
  const double h = x * y * hp / ch.kappa();
  return ch.mean_snr() * h * h;
}

}  // namespace linklab
