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
#include "linklab/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace linklab;

namespace {

SystemConfig negexp_system(int n, int m, double gth, double mean) {
  return SystemConfig(Topology{n, m, gth}, LinkBudget{mean, mean, 1.0}, NegExp(1.0, mean));
}

SystemConfig gg_system(int n, int m, double gth, double mean) {
  return SystemConfig(Topology{n, m, gth}, LinkBudget{mean, mean, 1.0},
                      GammaGammaPE(4.0, 1.9, 10.45, mean));
}

McSpec spec_of(std::int64_t trials, std::uint64_t seed, BerMode mode = BerMode::equivalent_snr,
               int threads = 0) {
  McSpec s;
  s.trials = trials;
  s.seed = seed;
  s.ber_mode = mode;
  s.threads = threads;
  return s;
}

bool within(const McEstimate& e, double ref) {
  return std::abs(e.mean - ref) <= 3.0 * e.half_width_95;
}

const double kTh = db_to_linear(10.0);

}  // namespace

TEST_CASE("ci_halfwidth") {
  CHECK(ci_halfwidth(0.5, 10000) == doctest::Approx(0.0098).epsilon(1e-12));
  CHECK(ci_halfwidth(0.0, 1000) == 0.0);
  CHECK(ci_halfwidth(1.0, 1000) == 0.0);
  CHECK(ci_halfwidth(0.001, 10000000) == doctest::Approx(1.96 * std::sqrt(0.001 * 0.999 / 1e7)));
  CHECK(ci_halfwidth(0.001, 10000000) == doctest::Approx(1.96e-5).epsilon(1e-3));
  CHECK_THROWS_AS(ci_halfwidth(0.5, 0), std::domain_error);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(spec_of(0, 1).validate(), std::domain_error);
  McSpec s;
  s.batch = 0;
  CHECK_THROWS_AS(s.validate(), std::domain_error);
  s = McSpec{};
  s.threads = -1;
  CHECK_THROWS_AS(s.validate(), std::domain_error);
}

TEST_CASE("thread count honours LINKLAB_THREADS") {
  ::setenv("LINKLAB_THREADS", "1", 1);
  CHECK(default_thread_count() == 1);
  ::setenv("LINKLAB_THREADS", "junk", 1);
  CHECK(default_thread_count() >= 1);
  ::unsetenv("LINKLAB_THREADS");
  CHECK(default_thread_count() >= 1);
}

TEST_CASE("outage simulation limits") {
  const auto zero = simulate_outage(negexp_system(2, 2, 0.0, 10.0), spec_of(10000, 1));
  CHECK(zero.mean == 0.0);
  CHECK(zero.half_width_95 == 0.0);
  CHECK(zero.trials == 10000);
  const auto one = simulate_outage(gg_system(2, 2, kTh, db_to_linear(-60.0)), spec_of(10000, 1));
  CHECK(one.mean == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("outage simulation matches the closed form across relay counts") {
  for (int m = 1; m <= 4; ++m) {
    for (double db : {15.0, 20.0, 25.0}) {
      const auto s = negexp_system(2, m, kTh, db_to_linear(db));
      const double p = outage_negexp(s).value;
      CHECK(within(simulate_outage(s, spec_of(1000000, 7)), p));
    }
  }
}

TEST_CASE("outage simulation matches the Gamma-Gamma expansion") {
  for (double db : {10.0, 20.0, 30.0}) {
    const auto s = gg_system(2, 2, kTh, db_to_linear(db));
    CHECK(within(simulate_outage(s, spec_of(1000000, 8)), outage_gg_pe(s).value));
  }
}

TEST_CASE("BER simulation: single Rayleigh hop") {
  const auto s = negexp_system(1, 0, 1.0, 1.0);
  const auto eq = simulate_ber(s, spec_of(200000, 3));
  CHECK(within(eq, 0.25));
  const auto cx = simulate_ber(s, spec_of(200000, 4, BerMode::cascade_xor));
  CHECK(cx.mode == BerMode::cascade_xor);
  CHECK(std::abs(eq.mean - cx.mean) <= 3.0 * (eq.half_width_95 + cx.half_width_95));
}

TEST_CASE("BER simulation matches quadrature for the moderate regime") {
  const auto s = gg_system(2, 2, 1.0, db_to_linear(20.0));
  const auto mc = simulate_ber(s, spec_of(1000000, 5));
  CHECK(within(mc, ber_dpsk_quadrature(s).value));
}

TEST_CASE("conditional-expectation estimator beats coin flipping") {
  const auto s = gg_system(2, 2, 1.0, db_to_linear(10.0));
  const auto mc = simulate_ber(s, spec_of(200000, 6));
  CHECK(mc.sample_variance > 0.0);
  CHECK(mc.sample_variance < mc.mean * (1.0 - mc.mean));
}

TEST_CASE("both BER models stay in range and vanish at high SNR") {
  for (BerMode mode : {BerMode::equivalent_snr, BerMode::cascade_xor}) {
    for (double db : {0.0, 10.0, 20.0}) {
      const auto e = simulate_ber(gg_system(2, 2, 1.0, db_to_linear(db)), spec_of(100000, 9, mode));
      CHECK(e.mean >= 0.0);
      CHECK(e.mean <= 0.5);
    }
    const auto hi = simulate_ber(gg_system(2, 2, 1.0, db_to_linear(60.0)), spec_of(100000, 9, mode));
    CHECK(hi.mean < 1e-4);
  }
}

TEST_CASE("estimates depend only on the seed") {
  const auto s = gg_system(2, 3, kTh, db_to_linear(20.0));
  for (BerMode mode : {BerMode::equivalent_snr, BerMode::cascade_xor}) {
    McSpec a = spec_of(100000, 77, mode, 1);
    a.batch = 4096;
    McSpec b = spec_of(100000, 77, mode, 4);
    b.batch = 4096;
    McSpec c = spec_of(100000, 77, mode, 3);
    c.batch = 1000;
    const auto ra = simulate_ber(s, a);
    const auto rb = simulate_ber(s, b);
    const auto rc = simulate_ber(s, c);
    CHECK(ra.mean == rb.mean);
    CHECK(ra.sample_variance == rb.sample_variance);
    CHECK(ra.mean == doctest::Approx(rc.mean).epsilon(1e-14));
  }
  McSpec a = spec_of(100000, 77, BerMode::equivalent_snr, 1);
  McSpec b = spec_of(100000, 77, BerMode::equivalent_snr, 4);
  const auto oa = simulate_outage(s, a);
  const auto ob = simulate_outage(s, b);
  CHECK(oa.mean == ob.mean);
  CHECK(oa.half_width_95 == ob.half_width_95);
  CHECK(simulate_outage(s, spec_of(100000, 78)).mean != oa.mean);
}
