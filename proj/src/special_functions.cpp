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

#include "linklab/special_functions.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace linklab {

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("ln_gamma: argument must be positive");
  }
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes signgam
}

Quad ln_gamma(const Quad& x) {
  if (!(x > 0)) {
    throw std::domain_error("ln_gamma: argument must be positive");
  }
  return boost::math::lgamma(x);
}

double erfc(double x) { return std::erfc(x); }

Quad erfc(const Quad& x) { return boost::math::erfc(x); }

double binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return std::round(c);
}

void QuadratureSpec::validate() const {
  if (node_count < 2) {
    throw std::domain_error("QuadratureSpec: node_count must be >= 2");
  }
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw std::domain_error("QuadratureSpec: tolerances must be positive");
  }
  if (max_nodes < node_count) {
    throw std::domain_error("QuadratureSpec: max_nodes below node_count");
  }
}

// ---------------------------------------------------------------------------
// Gauss-Laguerre
// ---------------------------------------------------------------------------

namespace {

GaussLaguerreRule build_laguerre(int n) {
  // Jacobi matrix of the monic Laguerre recurrence: a_i = 2i + 1, b_i = i.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (int i = 0; i < n; ++i) {
    diag(i) = 2.0 * i + 1.0;
  }
  for (int i = 1; i < n; ++i) {
    sub(i - 1) = static_cast<double>(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_laguerre_rule: eigen decomposition failed");
  }
  GaussLaguerreRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace

const GaussLaguerreRule& gauss_laguerre_rule(int n) {
  if (n < 1) {
    throw std::domain_error("gauss_laguerre_rule: n must be >= 1");
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLaguerreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<GaussLaguerreRule>(build_laguerre(n));
  }
  return *slot;
}

// ---------------------------------------------------------------------------
// Double-exponential rules
// ---------------------------------------------------------------------------

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_finite(double fx, double x) {
  if (!std::isfinite(fx)) {
    throw QuadratureError("quadrature: integrand is not finite at x = " + std::to_string(x),
                          QuadratureResult{});
  }
}

bool converged(double now, double before, double rel_tol, double abs_tol) {
  return std::abs(now - before) <= std::max(abs_tol, rel_tol * std::abs(now));
}

}  // namespace

QuadratureResult tanh_sinh(const RealFunction& f, double a, double b, double rel_tol,
                           double abs_tol, int max_level) {
  if (a == b) {
    return {0.0, 0.0, 0, 0, QuadratureScheme::tanh_sinh};
  }
  if (!(b > a)) {
    throw std::domain_error("tanh_sinh: need a < b");
  }
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  constexpr double t_max = 7.0;
  int evaluations = 0;

  // Contribution of the node pair at ±t (a single node at t = 0).
  auto pair = [&](double t) -> double {
    const double u = kHalfPi * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = kHalfPi * std::cosh(t) / (cu * cu);
    if (t == 0.0) {
      const double fx = f(mid);
      ++evaluations;
      require_finite(fx, mid);
      return w * fx;
    }
    const double gap = (b - a) / (std::exp(2.0 * u) + 1.0);
    double s = 0.0;
    const double xl = a + gap;
    const double xr = b - gap;
    if (xl > a && w > 0.0) {
      const double fl = f(xl);
      ++evaluations;
      require_finite(fl, xl);
      s += w * fl;
    }
    if (xr < b && w > 0.0) {
      const double fr = f(xr);
      ++evaluations;
      require_finite(fr, xr);
      s += w * fr;
    }
    return s;
  };
  auto active = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double gap = (b - a) / (std::exp(2.0 * u) + 1.0);
    return t <= t_max && (a + gap > a || b - gap < b);
  };

  double h = 1.0;
  double sum = pair(0.0);
  for (int k = 1; active(k * h); ++k) {
    sum += pair(k * h);
  }
  double estimate = h * half * sum;
  double previous = estimate;
  double error = std::numeric_limits<double>::infinity();
  int points = 0;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double added = 0.0;
    for (int k = 1; active(k * h); k += 2) {
      added += pair(k * h);
      ++points;
    }
    sum += added;
    previous = estimate;
    estimate = h * half * sum;
    error = std::abs(estimate - previous);
    if (level >= 3 && converged(estimate, previous, rel_tol, abs_tol)) {
      return {estimate, error, evaluations, 2 * points + 1, QuadratureScheme::tanh_sinh};
    }
  }
  throw QuadratureError("tanh_sinh: no convergence",
                        {estimate, error, evaluations, 2 * points + 1, QuadratureScheme::tanh_sinh});
}

QuadratureResult exp_sinh(const RealFunction& f, double a, double rel_tol, double abs_tol,
                          int max_level) {
  constexpr double t_lo = -6.5;
  constexpr double t_hi = 6.5;
  int evaluations = 0;

  auto node = [&](double t, bool& in_range) -> double {
    const double s = kHalfPi * std::sinh(t);
    const double off = std::exp(s);
    const double x = a + off;
    in_range = std::isfinite(x) && x > a && t >= t_lo && t <= t_hi;
    if (!in_range) {
      return 0.0;
    }
    const double w = kHalfPi * std::cosh(t) * off;
    const double fx = f(x);
    ++evaluations;
    require_finite(fx, x);
    return w * fx;
  };
  // Walk outwards from t0 in steps of `stride` until the nodes leave range or
  // the integrand has decayed to nothing for a while.
  auto sweep = [&](double t0, double stride) -> double {
    double s = 0.0;
    int quiet = 0;
    for (double t = t0;; t += stride) {
      bool in_range = false;
      const double c = node(t, in_range);
      if (!in_range) break;
      s += c;
      quiet = (c == 0.0) ? quiet + 1 : 0;
      if (quiet >= 4 && stride > 0.0) break;
    }
    return s;
  };

  double h = 1.0;
  double sum = sweep(0.0, h) + sweep(-h, -h);
  double estimate = h * sum;
  double previous = estimate;
  double error = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    sum += sweep(h, 2.0 * h) + sweep(-h, -2.0 * h);
    previous = estimate;
    estimate = h * sum;
    error = std::abs(estimate - previous);
    if (level >= 3 && converged(estimate, previous, rel_tol, abs_tol)) {
      return {estimate, error, evaluations, evaluations, QuadratureScheme::exp_sinh};
    }
  }
  throw QuadratureError("exp_sinh: no convergence",
                        {estimate, error, evaluations, evaluations, QuadratureScheme::exp_sinh});
}

QuadratureResult laplace_quadrature(const RealFunction& f, const QuadratureSpec& spec) {
  spec.validate();
  auto apply = [&](int n, int& evaluations) {
    const GaussLaguerreRule& rule = gauss_laguerre_rule(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (rule.weights(i) == 0.0) continue;
      const double fx = f(rule.nodes(i));
      ++evaluations;
      require_finite(fx, rule.nodes(i));
      s += rule.weights(i) * fx;
    }
    return s;
  };

  int evaluations = 0;
  int n = spec.node_count;
  double previous = apply(n, evaluations);
  double last_error = std::numeric_limits<double>::infinity();
  while (2 * n <= spec.max_nodes) {
    n *= 2;
    const double current = apply(n, evaluations);
    last_error = std::abs(current - previous);
    if (converged(current, previous, spec.relative_tolerance, spec.absolute_tolerance)) {
      return {current, last_error, evaluations, n, QuadratureScheme::gauss_laguerre};
    }
    previous = current;
  }

  // Laguerre failed (typically a non-analytic point at γ = 0). Fall back to
  // tanh-sinh on [0, 40]; the neglected tail is at most e^{-40} sup|f|.
  constexpr double cut = 40.0;
  auto weighted = [&](double x) { return std::exp(-x) * f(x); };
  QuadratureResult ts;
  try {
    ts = tanh_sinh(weighted, 0.0, cut, spec.relative_tolerance, spec.absolute_tolerance);
  } catch (const QuadratureError& e) {
    QuadratureResult best = e.best();
    if (last_error < best.error_estimate) {
      best = {previous, last_error, evaluations, n, QuadratureScheme::gauss_laguerre};
    }
    throw QuadratureError("laplace_quadrature: no convergence", best);
  }
  const double tail = std::exp(-cut) * std::max(1.0, std::abs(f(cut)));
  ts.error_estimate += tail;
  ts.evaluations += evaluations + 1;
  return ts;
}

}  // namespace linklab
