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


// Monte-Carlo oracle: draws every branch of the physical system per trial
// and estimates outage probability and DPSK BER.

#pragma once

#include "linklab/system_model.hpp"

#include <cstdint>

namespace linklab {

enum class BerMode { equivalent_snr, cascade_xor };

const char* to_string(BerMode m);

struct McSpec {
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  BerMode ber_mode = BerMode::equivalent_snr;
  std::int64_t batch = 1 << 16;  // trials per worker chunk
  int threads = 0;               // 0: default_thread_count()

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;  // 1.96 √(mean(1-mean)/trials)
  std::int64_t trials = 0;
  BerMode mode = BerMode::equivalent_snr;
  double sample_variance = 0.0;  // of the per-trial estimator
};

/// 1.96 √(p(1-p)/n); zero at p ∈ {0, 1}.
double ci_halfwidth(double mean, std::int64_t trials);

/// Hardware concurrency, capped by the LINKLAB_THREADS environment variable.
int default_thread_count();

/// Per trial: first hop is the best of N Rayleigh branches, each relay hop
/// the better of its FSO and RF branches; outage if any hop is below γ_th.
/// Draws stop as soon as the trial's outcome is decided.
McEstimate simulate_outage(const SystemConfig& cfg, const McSpec& spec);

/// equivalent_snr: mean of ½e^{-γ_min} over trials (conditional expectation
/// of the bit error given the weakest hop).
/// cascade_xor: each hop flips the bit with probability ½e^{-γ_hop}; the
/// end-to-end error is the parity of the hop flips.
McEstimate simulate_ber(const SystemConfig& cfg, const McSpec& spec);

}  // namespace linklab
