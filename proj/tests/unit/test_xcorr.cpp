// SPDX-License-Identifier: Apache-2.0
//
// bcss: multi-user binary chirp spread spectrum analysis
// Copyright (C) 2026 The bcss authors
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


#include "bcss/xcorr.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

namespace {

using namespace bcss;

ChirpParams params(int n) {
  ChirpParams p;
  p.n_users = n;
  return p;
}

cplx numeric(const ChirpParams& p, int m, int bm, int k, int bk, double df, double eps, int ns,
             DelayFill fill = DelayFill::kZero) {
  const auto law = linear_law(p);
  UserOffset off;
  off.epsilon = eps;
  off.delta_f = df;
  const auto a = apply_offset(sample_symbol(p, law, m, bm, ns), off, fill);
  const auto b = sample_symbol(p, law, k, bk, ns);
  return xcorr_numeric(a, b, p.amplitude * p.amplitude * p.symbol_duration).value();
}

TEST(XcorrNumeric, BasicIdentities) {
  const auto p = params(3);
  const auto s = sample_symbol(p, linear_law(p), 1, 0, 192);
  const auto r = xcorr_numeric(s, s);
  EXPECT_NEAR(r.re, 1.0, 1e-14);
  EXPECT_NEAR(r.im, 0.0, 1e-14);
  SampledSignal neg = s;
  for (auto& v : neg.samples) v = -v;
  const auto rn = xcorr_numeric(s, neg);
  EXPECT_NEAR(rn.re, -1.0, 1e-14);
  EXPECT_NEAR(rn.im, 0.0, 1e-14);
}

TEST(XcorrNumeric, ConjugateSymmetry) {
  const auto p = params(4);
  const auto law = linear_law(p);
  UserOffset off;
  off.epsilon = 0.125;
  off.delta_f = 1.7;
  const auto a = apply_offset(sample_symbol(p, law, 0, 1, 256), off);
  const auto b = sample_symbol(p, law, 3, 0, 256);
  const auto ab = xcorr_numeric(a, b);
  const auto ba = xcorr_numeric(b, a);
  EXPECT_NEAR(ab.re, ba.re, 1e-15);
  EXPECT_NEAR(ab.im, -ba.im, 1e-15);
}

TEST(XcorrNumeric, RejectsMismatchedGrids) {
  const auto p = params(2);
  const auto law = linear_law(p);
  EXPECT_THROW(xcorr_numeric(sample_symbol(p, law, 0, 0, 64), sample_symbol(p, law, 1, 0, 128)),
               std::domain_error);
  auto a = sample_symbol(p, law, 0, 0, 64);
  auto b = a;
  b.dt *= 2;
  EXPECT_THROW(xcorr_numeric(a, b), std::domain_error);
  SampledSignal z = a;
  for (auto& v : z.samples) v = {};
  EXPECT_THROW(xcorr_numeric(a, z), std::domain_error);
}

TEST(RhoDoppler, VanishesWithoutDoppler) {
  for (int n : {2, 5, 10})
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k)
        if (m != k) EXPECT_LT(rho_doppler_linear(params(n), m, k, 0.0).magnitude(), 1e-12);
}

TEST(RhoDoppler, FullOverlapAtFrequencyDifference) {
  EXPECT_NEAR(rho_doppler_linear(params(5), 0, 1, 1.0).magnitude(), 1.0, 1e-12);
  for (int k = 1; k < 5; ++k)
    EXPECT_NEAR(rho_doppler_linear(params(5), 0, k, static_cast<double>(k)).magnitude(), 1.0,
                1e-12);
}

TEST(RhoDoppler, MatchesNumericCurve) {
  const auto p = params(10);
  for (double nu = 0.0; nu <= 1.0 + 1e-12; nu += 0.005) {
    const double df = doppler_from_normalized(p, nu);
    const cplx a = rho_doppler_linear(p, 0, 5, df).value();
    EXPECT_LE(std::abs(a - numeric(p, 0, 0, 5, 0, df, 0.0, 640)), 1e-3) << nu;
  }
}

TEST(RhoDoppler, PeakLocation) {
  const auto p = params(5);
  for (int m = 0; m < 5; ++m)
    for (int k = m + 1; k < 5; ++k) {
      double best = -1.0;
      double at = -1.0;
      for (int i = 0; i <= 200; ++i) {
        const double nu = 0.005 * i;
        const double v = rho_doppler_linear(p, m, k, doppler_from_normalized(p, nu)).magnitude();
        if (v > best) {
          best = v;
          at = nu;
        }
      }
      EXPECT_NEAR(at, static_cast<double>(k - m) / 5.0, 0.005 + 1e-12);
      EXPECT_NEAR(best, 1.0, 1e-3);
    }
}

TEST(RhoDoppler, RemovableSingularityIsContinuous) {
  const auto p = params(5);
  const double centre = rho_doppler_linear(p, 0, 2, 2.0).magnitude();
  for (double d : {1e-13, 1e-10, 1e-7, 1e-5, 1e-4, 2e-4}) {
    EXPECT_NEAR(rho_doppler_linear(p, 0, 2, 2.0 + d).magnitude(), centre, 4.0 * d + 1e-15);
    EXPECT_NEAR(rho_doppler_delay_linear(p, 0, 2, 2.0 + d, 0.1).magnitude(),
                rho_doppler_delay_linear(p, 0, 2, 2.0, 0.1).magnitude(), 4.0 * d + 1e-15);
  }
}

TEST(RhoDopplerDelay, ReducesAtZeroDelay) {
  const auto p = params(5);
  for (double df = -3.0; df <= 6.0; df += 0.173)
    for (int m = 0; m < 5; ++m)
      for (int k = 0; k < 5; ++k) {
        const auto a = rho_doppler_linear(p, m, k, df);
        const auto b = rho_doppler_delay_linear(p, m, k, df, 0.0);
        EXPECT_NEAR(a.re, b.re, 1e-9);
        EXPECT_NEAR(a.im, b.im, 1e-9);
      }
}

TEST(RhoDopplerDelay, NeitherOrthogonalNorFullOverlap) {
  const auto p = params(5);
  double lo = 2.0;
  double hi = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double v =
        rho_doppler_delay_linear(p, 0, 2, doppler_from_normalized(p, 0.005 * i), 0.1).magnitude();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_GT(lo, 1e-3);
  EXPECT_LT(hi, 1.0 - 1e-3);
}

TEST(RhoDopplerDelay, MatchesNumericAtRandomDoppler) {
  const auto p = params(5);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double df = doppler_from_normalized(p, u(rng));
    for (auto fill : {DelayFill::kZero, DelayFill::kRepeat}) {
      const cplx a = rho_doppler_delay_linear(p, 0, 4, df, 0.1, fill).value();
      EXPECT_LE(std::abs(a - numeric(p, 0, 0, 4, 0, df, 0.1, 320, fill)), 1e-3);
    }
  }
}

TEST(RhoDopplerDelay, GridAgreementAllBits) {
  for (int n : {2, 3, 5}) {
    const auto p = params(n);
    const int ns = 64 * n;
    for (double eps : {0.0, 0.25, 0.5})
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
          for (int bm = 0; bm < 2; ++bm)
            for (int bk = 0; bk < 2; ++bk)
              for (double nu = -0.5; nu <= 1.0; nu += 0.125) {
                const double df = doppler_from_normalized(p, nu);
                const cplx a = rho_linear(p, m, bm, k, bk, df, eps).value();
                EXPECT_LE(std::abs(a - numeric(p, m, bm, k, bk, df, eps, ns)),
                          std::max(1e-3, 8.0 / ns));
                EXPECT_LE(std::abs(a), 1.0 + 1e-12);
              }
  }
}

TEST(RhoDopplerDelay, RejectsOutOfRange) {
  const auto p = params(3);
  EXPECT_THROW(rho_doppler_delay_linear(p, 0, 1, 0.0, 1.0), std::domain_error);
  EXPECT_THROW(rho_doppler_delay_linear(p, 0, 1, 0.0, -0.1), std::domain_error);
  EXPECT_THROW(rho_doppler_delay_linear(p, 3, 1, 0.0, 0.0), std::domain_error);
  EXPECT_THROW(rho_linear(p, 0, 2, 1, 0, 0.0, 0.0), std::domain_error);
}

TEST(NormalizedDoppler, RoundTrip) {
  const auto p = params(5);
  EXPECT_DOUBLE_EQ(normalized_doppler(p, 1.0), 0.2);
  EXPECT_DOUBLE_EQ(doppler_from_normalized(p, 0.4), 2.0);
}

TEST(CorrelationVector, SynchronousScenarioIsZero) {
  const auto sc = make_uniform_scenario(4, 0.0);
  const auto v = build_correlation_vector(sc, {0, 1, 1});
  ASSERT_EQ(v.size(), 3U);
  for (const auto& e : v.entries) EXPECT_LT(e.magnitude(), 1e-12);
  for (double r : v.energy_ratios) EXPECT_DOUBLE_EQ(r, 1.0);
  const auto num = build_correlation_vector(sc, {0, 1, 1}, CorrelationSource::kNumeric);
  for (const auto& e : num.entries) EXPECT_LT(e.magnitude(), 1e-12);
}

TEST(CorrelationVector, TwoUserDelayMatchesClosedForm) {
  const auto sc = make_uniform_scenario(2, 0.1);
  const auto v = build_correlation_vector(sc, {0});
  const auto ref = rho_doppler_delay_linear(sc.chirp, 1, 0, 0.0, 0.1);
  EXPECT_NEAR(v.entries[0].re, ref.re, 1e-15);
  EXPECT_NEAR(v.entries[0].im, ref.im, 1e-15);
  const auto num = build_correlation_vector(sc, {0}, CorrelationSource::kNumeric);
  EXPECT_LE(std::abs(num.entries[0].value() - ref.value()), 1e-3);
}

TEST(CorrelationVector, EnergyRatiosAndErrors) {
  auto sc = make_uniform_scenario(3, 0.05);
  sc.offsets[1].symbol_energy = 4.0;
  const auto v = build_correlation_vector(sc, {1, 0});
  EXPECT_DOUBLE_EQ(v.energy_ratios[0], 2.0);
  EXPECT_DOUBLE_EQ(v.energy_ratios[1], 1.0);
  EXPECT_THROW(build_correlation_vector(sc, {1}), std::domain_error);
  EXPECT_THROW(build_correlation_vector(sc, {1, 2}), std::domain_error);
  sc.offsets.pop_back();
  EXPECT_THROW(build_correlation_vector(sc, {1, 0}), std::domain_error);
}

TEST(BranchTable, VictimRowAndSourcesAgree) {
  auto sc = make_uniform_scenario(3, 0.1, 0.7);
  sc.offsets[2].theta = 0.4;
  const auto closed = build_branch_correlations(sc, CorrelationSource::kClosedForm);
  const auto num = build_branch_correlations(sc, CorrelationSource::kNumeric);
  EXPECT_NEAR(std::abs(closed.at(0, 0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(closed.at(0, 1, 1) - 1.0), 0.0, 1e-12);
  EXPECT_LT(std::abs(closed.at(0, 0, 1)), 1e-12);
  for (int j = 0; j < 3; ++j)
    for (int d = 0; d < 2; ++d)
      for (int v = 0; v < 2; ++v) EXPECT_LE(std::abs(closed.at(j, d, v) - num.at(j, d, v)), 1e-3);
}

TEST(BranchTable, ClosedFormNeedsLinearFamily) {
  auto sc = make_uniform_scenario(2, 0.0);
  sc.family = "poly-sweep";
  sc.family_coeffs = {0.0, 0.0, 1.0};
  EXPECT_THROW(build_branch_correlations(sc, CorrelationSource::kClosedForm),
               std::invalid_argument);
  EXPECT_NO_THROW(build_branch_correlations(sc));
}

}  // namespace
