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

#pragma once

#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <type_traits>

namespace linklab {

/// Quad precision (113-bit mantissa). Used wherever binomially expanded sums
/// cancel down to values many orders below their largest term.
using Quad = boost::multiprecision::float128;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
inline constexpr bool is_builtin_float_v = std::is_floating_point_v<Scalar>;

template <typename Scalar>
inline double to_double(const Scalar& x) {
  if constexpr (is_builtin_float_v<Scalar>) {
    return static_cast<double>(x);
  } else {
    return x.template convert_to<double>();
  }
}

template <typename Scalar>
inline Scalar epsilon() {
  return std::numeric_limits<Scalar>::epsilon();
}

/// Neumaier-compensated accumulator. Also tracks sum |term| so callers can
/// report how much cancellation the sum went through.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(const Scalar& term) {
    using std::abs;
    const Scalar t = sum_ + term;
    if (abs(sum_) >= abs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += abs(term);
    max_term_ = abs(term) > max_term_ ? abs(term) : max_term_;
  }

  Scalar value() const { return sum_ + comp_; }
  Scalar abs_sum() const { return abs_sum_; }
  Scalar max_term() const { return max_term_; }

  /// max |term| / |sum|; infinite when the sum cancels to exactly zero.
  double cancellation() const {
    using std::abs;
    const Scalar v = abs(value());
    if (v == Scalar(0)) {
      return max_term_ == Scalar(0) ? 1.0 : std::numeric_limits<double>::infinity();
    }
    return to_double(Scalar(max_term_ / v));
  }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
  Scalar abs_sum_{0};
  Scalar max_term_{0};
};

}  // namespace linklab
