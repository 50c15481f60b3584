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


#include "linklab/montecarlo.hpp"

#include "linklab/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace linklab {

const char* to_string(BerMode m) {
  return m == BerMode::equivalent_snr ? "equivalent_snr" : "cascade_xor";
}

void McSpec::validate() const {
  if (trials < 1) {
    throw std::domain_error("McSpec: trials must be >= 1");
  }
  if (batch < 1) {
    throw std::domain_error("McSpec: batch must be >= 1");
  }
  if (threads < 0) {
    throw std::domain_error("McSpec: threads must be >= 0");
  }
}

double ci_halfwidth(double mean, std::int64_t trials) {
  if (trials < 1) {
    throw std::domain_error("ci_halfwidth: trials must be >= 1");
  }
  if (mean <= 0.0 || mean >= 1.0) {
    return 0.0;
  }
  return 1.96 * std::sqrt(mean * (1.0 - mean) / static_cast<double>(trials));
}

int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("LINKLAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) n = std::min(n, cap);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

namespace {

struct Tally {
  double sum = 0.0;
  double sum_sq = 0.0;
};

/// Runs trial(i) -> double for i in [0, trials) in fixed-size batches over a
/// worker pool and reduces the batch tallies in batch order.
template <typename Trial>
Tally run_batches(const McSpec& spec, Trial&& trial) {
  const std::int64_t n_batches = (spec.trials + spec.batch - 1) / spec.batch;
  std::vector<Tally> tallies(static_cast<std::size_t>(n_batches));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      const std::int64_t lo = b * spec.batch;
      const std::int64_t hi = std::min(spec.trials, lo + spec.batch);
      Tally t;
      for (std::int64_t i = lo; i < hi; ++i) {
        const double x = trial(static_cast<std::uint64_t>(i));
        t.sum += x;
        t.sum_sq += x * x;
      }
      tallies[static_cast<std::size_t>(b)] = t;
    }
  };
  const int threads = std::max(
      1, static_cast<int>(std::min<std::int64_t>(
             n_batches, spec.threads > 0 ? spec.threads : default_thread_count())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Tally total;
  for (const Tally& t : tallies) {
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
  }
  return total;
}

McEstimate finish(const Tally& t, const McSpec& spec, BerMode mode) {
  McEstimate e;
  const double n = static_cast<double>(spec.trials);
  e.mean = t.sum / n;
  e.trials = spec.trials;
  e.mode = mode;
  e.half_width_95 = ci_halfwidth(e.mean, spec.trials);
  e.sample_variance =
      spec.trials > 1 ? std::max(0.0, (t.sum_sq - n * e.mean * e.mean) / (n - 1.0)) : 0.0;
  return e;
}

double draw_fso(CounterRng& rng, const SystemConfig& cfg) {
  if (cfg.is_gg_pe()) {
    return sample_gg_pe_snr(rng, cfg.gg_pe());
  }
  return sample_negexp_snr(rng, cfg.negexp());
}

}  // namespace

McEstimate simulate_outage(const SystemConfig& cfg, const McSpec& spec) {
  spec.validate();
  const Topology& top = cfg.topology();
  const double gth = top.threshold_snr;
  // A Rayleigh (or Negative-Exponential) branch is below γ_th exactly when
  // its uniform exceeds these levels, so those branches need no logarithm.
  const double u_rf = std::exp(-gth / cfg.rf().mean_snr());
  const double u_ne =
      cfg.is_gg_pe() ? 0.0
                     : std::exp(-cfg.negexp().lambda() * std::sqrt(gth / cfg.negexp().mean_snr()));
  const bool gg = cfg.is_gg_pe();
  auto trial = [&](std::uint64_t i) -> double {
    CounterRng rng(spec.seed, i);
    bool first_down = true;
    for (int a = 0; a < top.n_antennas; ++a) {
      if (!(rng.uniform() > u_rf)) {
        first_down = false;
        break;
      }
    }
    if (first_down) return 1.0;
    for (int j = 0; j < top.n_relays; ++j) {
      if (!(rng.uniform() > u_rf)) continue;  // RF branch carries the hop
      const bool fso_down = gg ? sample_gg_pe_snr(rng, cfg.gg_pe()) < gth : rng.uniform() > u_ne;
      if (fso_down) return 1.0;
    }
    return 0.0;
  };
  return finish(run_batches(spec, trial), spec, spec.ber_mode);
}

McEstimate simulate_ber(const SystemConfig& cfg, const McSpec& spec) {
  spec.validate();
  const Topology& top = cfg.topology();
  const bool xor_mode = spec.ber_mode == BerMode::cascade_xor;
  auto trial = [&](std::uint64_t i) -> double {
    CounterRng rng(spec.seed, i);
    double first = 0.0;
    for (int a = 0; a < top.n_antennas; ++a) {
      first = std::max(first, sample_rayleigh_snr(rng, cfg.rf()));
    }
    if (!xor_mode) {
      double g_min = first;
      for (int j = 0; j < top.n_relays; ++j) {
        const double rf = sample_rayleigh_snr(rng, cfg.rf());
        const double fso = draw_fso(rng, cfg);
        g_min = std::min(g_min, std::max(rf, fso));
      }
      return 0.5 * std::exp(-g_min);
    }
    bool bit = rng.uniform() < 0.5 * std::exp(-first);
    for (int j = 0; j < top.n_relays; ++j) {
      const double rf = sample_rayleigh_snr(rng, cfg.rf());
      const double fso = draw_fso(rng, cfg);
      if (rng.uniform() < 0.5 * std::exp(-std::max(rf, fso))) bit = !bit;
    }
    return bit ? 1.0 : 0.0;
  };
  return finish(run_batches(spec, trial), spec, spec.ber_mode);
}

}  // namespace linklab
