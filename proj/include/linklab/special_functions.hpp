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

// Numerical kernel shared by every analytical evaluator: gamma-function
// logarithms, Pochhammer symbols, erfc, Laplace-type quadrature and truncated
// power-series algebra. Everything here is a pure function of its arguments.

#pragma once

#include "linklab/scalar.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace linklab {

// ---------------------------------------------------------------------------
// Gamma function family
// ---------------------------------------------------------------------------

/// ln Γ(x) for x > 0. Throws std::domain_error otherwise.
double ln_gamma(double x);
Quad ln_gamma(const Quad& x);

template <typename Scalar>
struct SignedLog {
  Scalar log_abs;
  int sign;  // +1, -1, or 0 for an exact zero

  Scalar value() const {
    using std::exp;
    return sign == 0 ? Scalar(0) : Scalar(sign) * exp(log_abs);
  }
};

namespace detail {

/// sin(pi x) with exact argument reduction, so that integer x gives exactly 0.
template <typename Scalar>
Scalar sin_pi(const Scalar& x) {
  using std::floor;
  using std::sin;
  const Scalar pi = boost::math::constants::pi<Scalar>();
  Scalar r = x - Scalar(2) * floor(x / Scalar(2));  // r in [0, 2)
  if (r == Scalar(0) || r == Scalar(1)) {
    return Scalar(0);
  }
  if (r > Scalar(1)) {
    return -sin(pi * (r - Scalar(1)));
  }
  return sin(pi * r);
}

}  // namespace detail

/// log|Γ(x)| and sign(Γ(x)) for any real x that is not a pole. Negative
/// arguments go through the reflection formula Γ(x)Γ(1-x) = π / sin(πx).
template <typename Scalar>
SignedLog<Scalar> signed_ln_gamma(const Scalar& x) {
  using std::abs;
  using std::log;
  if (x > Scalar(0)) {
    return {ln_gamma(x), 1};
  }
  const Scalar s = detail::sin_pi(x);
  if (s == Scalar(0)) {
    throw std::domain_error("signed_ln_gamma: pole at non-positive integer");
  }
  const Scalar pi = boost::math::constants::pi<Scalar>();
  return {log(pi) - log(abs(s)) - ln_gamma(Scalar(1) - x), s > Scalar(0) ? 1 : -1};
}

template <typename Scalar>
struct PochhammerValue {
  Scalar value;
  bool overflow = false;
};

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1. A factor that is
/// exactly zero (non-positive integer a) terminates the product at 0. On
/// overflow the value is a signed infinity and `overflow` is set.
template <typename Scalar>
PochhammerValue<Scalar> pochhammer_checked(const Scalar& a, int n) {
  using std::isinf;
  if (n < 0) {
    throw std::domain_error("pochhammer: n must be non-negative");
  }
  Scalar p(1);
  for (int k = 0; k < n; ++k) {
    const Scalar f = a + Scalar(k);
    if (f == Scalar(0)) {
      return {Scalar(0), false};
    }
    p *= f;
    if (isinf(p)) {
      // Keep the sign of the remaining factors.
      int sign = p > Scalar(0) ? 1 : -1;
      for (int j = k + 1; j < n; ++j) {
        const Scalar g = a + Scalar(j);
        if (g == Scalar(0)) {
          return {Scalar(0), false};
        }
        if (g < Scalar(0)) {
          sign = -sign;
        }
      }
      return {Scalar(sign) * std::numeric_limits<Scalar>::infinity(), true};
    }
  }
  return {p, false};
}

template <typename Scalar>
Scalar pochhammer(const Scalar& a, int n) {
  return pochhammer_checked(a, n).value;
}

/// log|(a)_n| with sign, accumulated factor by factor.
template <typename Scalar>
SignedLog<Scalar> ln_pochhammer(const Scalar& a, int n) {
  using std::abs;
  using std::log;
  SignedLog<Scalar> out{Scalar(0), 1};
  for (int k = 0; k < n; ++k) {
    const Scalar f = a + Scalar(k);
    if (f == Scalar(0)) {
      return {Scalar(0), 0};
    }
    out.log_abs += log(abs(f));
    if (f < Scalar(0)) {
      out.sign = -out.sign;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complementary error function
// ---------------------------------------------------------------------------

double erfc(double x);
Quad erfc(const Quad& x);

/// Scaled complementary error function exp(x^2) erfc(x) for x >= 0.
template <typename Scalar>
Scalar erfcx(const Scalar& x) {
  using std::exp;
  using std::sqrt;
  if (x < Scalar(0)) {
    throw std::domain_error("erfcx: negative argument");
  }
  // Above the switch point the continued fraction converges in a few dozen
  // terms; below it the direct product is free of overflow.
  const Scalar direct_limit = is_builtin_float_v<Scalar> ? Scalar(5) : Scalar(20);
  if (x < direct_limit) {
    return exp(x * x) * linklab::erfc(x);
  }
  // erfc(x) e^{x^2} = 1/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  // evaluated with the modified Lentz algorithm.
  const Scalar tiny = Scalar(1e-300);
  const Scalar eps = epsilon<Scalar>();
  Scalar f = x;
  Scalar c = x;
  Scalar d(0);
  for (int n = 1; n < 5000; ++n) {
    const Scalar an = Scalar(n) / Scalar(2);
    d = x + an * d;
    if (d == Scalar(0)) d = tiny;
    c = x + an / c;
    if (c == Scalar(0)) c = tiny;
    d = Scalar(1) / d;
    const Scalar delta = c * d;
    f *= delta;
    using std::abs;
    if (abs(delta - Scalar(1)) < eps) {
      break;
    }
  }
  return Scalar(1) / (f * sqrt(boost::math::constants::pi<Scalar>()));
}

/// ∫₀^∞ exp(-a γ - b √γ) dγ = 1/a - b√π/(2 a^{3/2}) e^{b²/4a} erfc(b/(2√a)),
/// for a > 0, b >= 0.
template <typename Scalar>
Scalar laplace_exp_sqrt(const Scalar& a, const Scalar& b) {
  using std::sqrt;
  if (!(a > Scalar(0)) || b < Scalar(0)) {
    throw std::domain_error("laplace_exp_sqrt: need a > 0, b >= 0");
  }
  if (b == Scalar(0)) {
    return Scalar(1) / a;
  }
  const Scalar sqrt_a = sqrt(a);
  const Scalar z = b / (Scalar(2) * sqrt_a);
  const Scalar sqrt_pi = sqrt(boost::math::constants::pi<Scalar>());
  return Scalar(1) / a - b * sqrt_pi / (Scalar(2) * a * sqrt_a) * erfcx(z);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

using RealFunction = std::function<double(double)>;

struct QuadratureSpec {
  int node_count = 32;  // first Gauss-Laguerre rule; doubled up to max_nodes
  double relative_tolerance = 1e-12;
  double absolute_tolerance = 1e-300;
  int max_nodes = 512;

  void validate() const;
};

enum class QuadratureScheme { gauss_laguerre, tanh_sinh, exp_sinh };

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  int nodes = 0;  // size of the final rule (Laguerre) or level point count
  QuadratureScheme scheme = QuadratureScheme::gauss_laguerre;
};

/// Thrown when no scheme reaches the requested tolerance. Carries the best
/// estimate seen.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

struct GaussLaguerreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Laguerre rule for weight e^{-x} on [0, ∞), built by the
/// Golub-Welsch eigenvalue method. Rules are cached; the reference stays
/// valid for the lifetime of the program.
const GaussLaguerreRule& gauss_laguerre_rule(int n);

/// ∫₀^∞ e^{-γ} f(γ) dγ. Gauss-Laguerre with node doubling from
/// spec.node_count to spec.max_nodes; if two successive rules never agree,
/// tanh-sinh on [0, 40] with the e^{-40} tail folded into the error estimate.
QuadratureResult laplace_quadrature(const RealFunction& f, const QuadratureSpec& spec);

/// Tanh-sinh on the finite interval [a, b]. Tolerates integrable endpoint
/// singularities; the endpoints themselves are never evaluated.
QuadratureResult tanh_sinh(const RealFunction& f, double a, double b, double rel_tol,
                           double abs_tol, int max_level = 12);

/// Exp-sinh on [a, ∞).
QuadratureResult exp_sinh(const RealFunction& f, double a, double rel_tol, double abs_tol,
                          int max_level = 12);

// ---------------------------------------------------------------------------
// Truncated power series in x^step
// ---------------------------------------------------------------------------

/// Σ_i c_i x^{offset + i*step}.
template <typename Scalar>
struct PowerSeries {
  Scalar exponent_offset{0};
  VectorX<Scalar> coefficients;
  double step = 0.5;

  PowerSeries() = default;
  PowerSeries(const Scalar& offset, VectorX<Scalar> coeffs, double step_ = 0.5)
      : exponent_offset(offset), coefficients(std::move(coeffs)), step(step_) {
    validate();
  }

  /// Exponent of term n, formed in Scalar so a fractional offset keeps all
  /// of its bits.
  Scalar exponent(Eigen::Index n) const {
    return exponent_offset + Scalar(step) * Scalar(static_cast<double>(n));
  }

  static PowerSeries constant(const Scalar& c, double step_ = 0.5) {
    VectorX<Scalar> v(1);
    v(0) = c;
    return PowerSeries(Scalar(0), std::move(v), step_);
  }

  Eigen::Index size() const { return coefficients.size(); }

  void validate() const {
    using std::isfinite;
    if (!(step > 0.0)) {
      throw std::domain_error("PowerSeries: step must be positive");
    }
    for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
      if (!isfinite(coefficients(i))) {
        throw std::domain_error("PowerSeries: non-finite coefficient");
      }
    }
  }

  /// Evaluates the series at x > 0.
  Scalar operator()(const Scalar& x) const {
    using std::pow;
    const Scalar base = pow(x, Scalar(step));
    Scalar acc(0);
    for (Eigen::Index i = coefficients.size(); i-- > 0;) {
      acc = acc * base + coefficients(i);
    }
    return acc * pow(x, Scalar(exponent_offset));
  }
};

/// Truncated Cauchy product; offsets add.
template <typename Scalar>
PowerSeries<Scalar> series_mul(const PowerSeries<Scalar>& a, const PowerSeries<Scalar>& b,
                               int truncation) {
  if (truncation < 1) {
    throw std::domain_error("series_mul: truncation must be >= 1");
  }
  if (a.step != b.step) {
    throw std::domain_error("series_mul: step mismatch");
  }
  PowerSeries<Scalar> out;
  out.step = a.step;
  out.exponent_offset = a.exponent_offset + b.exponent_offset;
  if (a.size() == 0 || b.size() == 0) {
    out.coefficients = VectorX<Scalar>::Zero(1);
    return out;
  }
  const Eigen::Index n =
      std::min<Eigen::Index>(truncation, a.size() + b.size() - 1);
  out.coefficients = VectorX<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < std::min(a.size(), n); ++i) {
    const Eigen::Index jmax = std::min(b.size(), n - i);
    for (Eigen::Index j = 0; j < jmax; ++j) {
      out.coefficients(i + j) += a.coefficients(i) * b.coefficients(j);
    }
  }
  return out;
}

/// k-th power by binary powering; k = 0 gives the constant series 1.
template <typename Scalar>
PowerSeries<Scalar> series_pow(const PowerSeries<Scalar>& s, int k, int truncation) {
  if (truncation < 1) {
    throw std::domain_error("series_pow: truncation must be >= 1");
  }
  if (k < 0) {
    throw std::domain_error("series_pow: negative power");
  }
  PowerSeries<Scalar> result = PowerSeries<Scalar>::constant(Scalar(1), s.step);
  PowerSeries<Scalar> base = s;
  if (base.size() > truncation) {
    base.coefficients.conservativeResize(truncation);
  }
  while (k > 0) {
    if (k & 1) {
      result = series_mul(result, base, truncation);
    }
    k >>= 1;
    if (k > 0) {
      base = series_mul(base, base, truncation);
    }
  }
  return result;
}

/// Binomial coefficient as an exact double for the small arguments used in
/// the expansion sums.
double binomial(int n, int k);

}  // namespace linklab
