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

#include "linklab/channel_models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace linklab {

namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw std::domain_error(std::string(what) + " must be finite and > 0");
  }
}

constexpr double kPoleTolerance = 1e-9;
constexpr double kPoleNudge = 1e-6;

double integer_distance(double x) { return std::abs(x - std::round(x)); }

}  // namespace

RayleighRF::RayleighRF(double mean_snr) : mean_snr_(mean_snr) {
  require_positive(mean_snr, "RayleighRF: mean_snr");
}

NegExp::NegExp(double lambda, double mean_snr) : lambda_(lambda), mean_snr_(mean_snr) {
  require_positive(lambda, "NegExp: lambda");
  require_positive(mean_snr, "NegExp: mean_snr");
}

GammaGammaPE::GammaGammaPE(double alpha, double beta, double xi, double mean_snr,
                           std::optional<double> kappa)
    : alpha_(alpha), beta_(beta), xi_(xi), mean_snr_(mean_snr) {
  require_positive(alpha, "GammaGammaPE: alpha");
  require_positive(beta, "GammaGammaPE: beta");
  require_positive(xi, "GammaGammaPE: xi");
  require_positive(mean_snr, "GammaGammaPE: mean_snr");
  if (kappa) {
    require_positive(*kappa, "GammaGammaPE: kappa");
    kappa_ = *kappa;
    kappa_overridden_ = true;
  } else {
    kappa_ = default_kappa(xi);
  }

  const double x2 = xi * xi;
  const bool ab = integer_distance(alpha_ - beta_) < kPoleTolerance;
  const bool bx = integer_distance(beta_ - x2) < kPoleTolerance;
  if (ab || bx) {
    beta_ += kPoleNudge;
    std::ostringstream os;
    os << "beta perturbed by +" << kPoleNudge << " (integer parameter separation)";
    perturbation_ = os.str();
  }
  if (integer_distance(alpha_ - x2) < kPoleTolerance) {
    alpha_ += kPoleNudge;
    std::ostringstream os;
    os << (perturbation_.empty() ? "" : "; ") << "alpha perturbed by +" << kPoleNudge
       << " (integer parameter separation)";
    perturbation_ += os.str();
  }
  if (integer_distance(alpha_ - beta_) < kPoleTolerance ||
      integer_distance(alpha_ - x2) < kPoleTolerance ||
      integer_distance(beta_ - x2) < kPoleTolerance) {
    throw std::domain_error("GammaGammaPE: integer parameter separation persists after perturbation");
  }
}

double GammaGammaPE::argument(double gamma) const {
  return argument_scale() * std::sqrt(gamma / mean_snr_);
}

GammaGammaPE GammaGammaPE::with_mean_snr(double mean_snr) const {
  require_positive(mean_snr, "GammaGammaPE: mean_snr");
  GammaGammaPE out = *this;
  out.mean_snr_ = mean_snr;
  return out;
}

// ---------------------------------------------------------------------------

double rayleigh_cdf(double gamma, const RayleighRF& ch) {
  if (!(gamma >= 0.0)) {
    throw std::domain_error("rayleigh_cdf: gamma must be >= 0");
  }
  return -std::expm1(-gamma / ch.mean_snr());
}

double negexp_cdf(double gamma, const NegExp& ch) {
  if (!(gamma >= 0.0)) {
    throw std::domain_error("negexp_cdf: gamma must be >= 0");
  }
  return -std::expm1(-ch.lambda() * std::sqrt(gamma / ch.mean_snr()));
}

// ---------------------------------------------------------------------------
// Mixture-integral forms
// ---------------------------------------------------------------------------

namespace {

struct GgDensity {
  double nu;
  double ab;
  double log_norm;
  double power;  // (α+β)/2 - 1

  GgDensity(double alpha, double beta)
      : nu(std::abs(alpha - beta)),
        ab(alpha * beta),
        log_norm(std::log(2.0) + 0.5 * (alpha + beta) * std::log(alpha * beta) -
                 ln_gamma(alpha) - ln_gamma(beta)),
        power(0.5 * (alpha + beta) - 1.0) {}

  double log_bessel_k(double z) const {
    if (z < 1e-30) {
      // K_ν(z) ~ Γ(ν)/2 (2/z)^ν
      if (nu == 0.0) return std::log(-std::log(0.5 * z));
      return ln_gamma(nu) - std::log(2.0) + nu * std::log(2.0 / z);
    }
    if (z > 600.0) {
      // Scaled form avoids underflow: K_ν(z) e^z is O(1/√z).
      return std::log(std::cyl_bessel_k(nu, 600.0)) +
             0.5 * std::log(600.0 / z) - (z - 600.0);
    }
    return std::log(std::cyl_bessel_k(nu, z));
  }

  double operator()(double a) const {
    if (!(a > 0.0)) return 0.0;
    const double z = 2.0 * std::sqrt(ab * a);
    return std::exp(log_norm + power * std::log(a) + log_bessel_k(z));
  }
};

constexpr double kQuadRel = 1e-13;
constexpr double kQuadAbs = 1e-300;

}  // namespace

double gamma_gamma_pdf(double h, double alpha, double beta) {
  require_positive(alpha, "gamma_gamma_pdf: alpha");
  require_positive(beta, "gamma_gamma_pdf: beta");
  if (h < 0.0) {
    throw std::domain_error("gamma_gamma_pdf: h must be >= 0");
  }
  return GgDensity(alpha, beta)(h);
}

double gg_pe_cdf_quadrature(double gamma, const GammaGammaPE& ch) {
  if (!(gamma >= 0.0)) {
    throw std::domain_error("gg_pe_cdf_quadrature: gamma must be >= 0");
  }
  if (gamma == 0.0) return 0.0;
  if (std::isinf(gamma)) return 1.0;
  const GgDensity f(ch.alpha(), ch.beta());
  const double h = ch.kappa() * std::sqrt(gamma / ch.mean_snr());
  const double x2 = ch.xi2();
  // Pr(h_a h_p <= h) with Pr(h_p <= u) = u^{ξ²} on (0, 1].
  if (h < 1.0) {
    const double below = tanh_sinh([&](double a) { return f(a); }, 0.0, h, kQuadRel, kQuadAbs).value;
    const double above = exp_sinh(
        [&](double a) { return f(a) * std::exp(x2 * std::log(h / a)); }, h, kQuadRel, kQuadAbs).value;
    return std::clamp(below + above, 0.0, 1.0);
  }
  const double tail = exp_sinh(
      [&](double a) { return -f(a) * std::expm1(x2 * std::log(h / a)); }, h, kQuadRel, kQuadAbs).value;
  return std::clamp(1.0 - tail, 0.0, 1.0);
}

double gg_pe_pdf_quadrature(double gamma, const GammaGammaPE& ch) {
  if (!(gamma > 0.0)) {
    throw std::domain_error("gg_pe_pdf_quadrature: gamma must be > 0");
  }
  const GgDensity f(ch.alpha(), ch.beta());
  const double h = ch.kappa() * std::sqrt(gamma / ch.mean_snr());
  const double x2 = ch.xi2();
  const double inner = exp_sinh(
      [&](double a) { return f(a) * std::exp(x2 * std::log(h / a)); }, h, kQuadRel, kQuadAbs).value;
  return x2 / (2.0 * gamma) * inner;
}

// ---------------------------------------------------------------------------
// Series entry points
// ---------------------------------------------------------------------------

namespace {

const GgPeSeries<Quad>& cached_series(const GammaGammaPE& ch, int K) {
  // One evaluator per thread for the most recent channel; sweeps call these
  // helpers repeatedly with the same parameters.
  thread_local std::unique_ptr<GgPeSeries<Quad>> cache;
  if (!cache || cache->coefficients().truncation != K ||
      cache->channel().alpha() != ch.alpha() || cache->channel().beta() != ch.beta() ||
      cache->channel().xi() != ch.xi() || cache->channel().kappa() != ch.kappa() ||
      cache->channel().mean_snr() != ch.mean_snr()) {
    cache = std::make_unique<GgPeSeries<Quad>>(ch, K);
  }
  return *cache;
}

std::string describe(const char* what, const SeriesEvaluation& e) {
  std::ostringstream os;
  os << what << ": series not trusted at argument " << e.argument << " (tail " << e.tail
     << ", radius " << kSeriesRadius << "); use gg_pe_cdf_quadrature";
  return os.str();
}

}  // namespace

double gg_pe_pdf(double gamma, const GammaGammaPE& ch, int K) {
  if (!(gamma > 0.0)) {
    throw std::domain_error("gg_pe_pdf: gamma must be > 0");
  }
  if (ch.argument(gamma) > kSeriesRadius) {
    return gg_pe_pdf_quadrature(gamma, ch);
  }
  const SeriesEvaluation e = cached_series(ch, K).pdf(gamma);
  if (!e.converged) {
    throw SeriesError(describe("gg_pe_pdf", e));
  }
  return std::max(e.value, 0.0);
}

double gg_pe_cdf_series(double gamma, const GammaGammaPE& ch, int K) {
  if (!(gamma >= 0.0)) {
    throw std::domain_error("gg_pe_cdf_series: gamma must be >= 0");
  }
  const SeriesEvaluation e = cached_series(ch, K).cdf(gamma);
  if (!e.converged) {
    throw SeriesError(describe("gg_pe_cdf_series", e));
  }
  return std::clamp(e.value, 0.0, 1.0);
}

CdfEvaluation gg_pe_cdf(double gamma, const GgPeSeries<Quad>& series) {
  const GammaGammaPE& ch = series.channel();
  if (!(gamma >= 0.0)) {
    throw std::domain_error("gg_pe_cdf: gamma must be >= 0");
  }
  if (ch.argument(gamma) <= kSeriesRadius) {
    const SeriesEvaluation e = series.cdf(gamma);
    if (e.converged) {
      return {std::clamp(e.value, 0.0, 1.0), CdfMethod::series, e.terms, e.error_estimate};
    }
  }
  return {gg_pe_cdf_quadrature(gamma, ch), CdfMethod::quadrature, 0, kQuadRel};
}

CdfEvaluation gg_pe_cdf(double gamma, const GammaGammaPE& ch, int K) {
  return gg_pe_cdf(gamma, cached_series(ch, K));
}

// ---------------------------------------------------------------------------
// Asymptotics
// ---------------------------------------------------------------------------

const char* to_string(AsymptoticBranchKind kind) {
  switch (kind) {
    case AsymptoticBranchKind::beta_dominant:
      return "beta_dominant";
    case AsymptoticBranchKind::xi_dominant:
      return "xi_dominant";
    case AsymptoticBranchKind::alpha_dominant:
      return "alpha_dominant";
  }
  return "unknown";
}

AsymptoticBranch gg_pe_asymptotic_branch(const GammaGammaPE& ch) {
  const double a = ch.alpha();
  const double b = ch.beta();
  const double x2 = ch.xi2();
  const double lo = std::min({a, b, x2});
  int at_min = 0;
  for (double v : {a, b, x2}) {
    if (std::abs(v - lo) < 1e-9) ++at_min;
  }
  if (at_min != 1) {
    throw std::domain_error("gg_pe_asymptotic_branch: ambiguous parameter ordering");
  }
  const double log_c = std::log(ch.argument_scale());
  const double log_g = std::log(ch.mean_snr());
  const double lg_ab = ln_gamma(a) + ln_gamma(b);

  AsymptoticBranch out;
  int sign = 1;
  double log_coef = 0.0;
  if (b == lo) {
    // Leading z ladder term.
    const SignedLog<double> g = signed_ln_gamma(a - b);
    out.branch = AsymptoticBranchKind::beta_dominant;
    out.exponent = b / 2.0;
    log_coef = std::log(x2) + g.log_abs - ln_gamma(a) - ln_gamma(b + 1.0) -
               std::log(x2 - b) + b * log_c;
    sign = g.sign;
  } else if (x2 == lo) {
    const SignedLog<double> ga = signed_ln_gamma(a - x2);
    const SignedLog<double> gb = signed_ln_gamma(b - x2);
    out.branch = AsymptoticBranchKind::xi_dominant;
    out.exponent = x2 / 2.0;
    log_coef = ga.log_abs + gb.log_abs - lg_ab + x2 * log_c;
    sign = ga.sign * gb.sign;
  } else {
    const SignedLog<double> g = signed_ln_gamma(b - a);
    out.branch = AsymptoticBranchKind::alpha_dominant;
    out.exponent = a / 2.0;
    log_coef = std::log(x2) + g.log_abs - ln_gamma(a + 1.0) - ln_gamma(b) -
               std::log(x2 - a) + a * log_c;
    sign = g.sign;
  }
  if (sign <= 0) {
    throw std::domain_error("gg_pe_asymptotic_branch: non-positive leading coefficient");
  }
  out.log_coefficient = log_coef - out.exponent * log_g;
  out.coefficient = std::exp(out.log_coefficient);
  return out;
}

AsymptoticValue gg_pe_cdf_asymptotic(double gamma, const GammaGammaPE& ch) {
  if (!(gamma > 0.0)) {
    throw std::domain_error("gg_pe_cdf_asymptotic: gamma must be > 0");
  }
  AsymptoticValue out;
  out.branch = gg_pe_asymptotic_branch(ch);
  const double lv = out.branch.log_coefficient + out.branch.exponent * std::log(gamma);
  out.value = lv >= 0.0 ? 1.0 : std::exp(lv);
  return out;
}

}  // namespace linklab
