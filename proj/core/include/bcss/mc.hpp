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


#ifndef BCSS_MC_HPP
#define BCSS_MC_HPP

#include <cstdint>
#include <vector>

#include "bcss/scenario.hpp"
#include "bcss/waveform.hpp"

namespace bcss {

enum class Detector { kCoherent, kNoncoherent };

/// Decision from the two correlator outputs z_v = <rx, branch_v>.
/// Noncoherent: larger |z_v|^2. Coherent: larger Re z_v. Ties go to 0.
int decide_noncoherent(cplx z0, cplx z1);
int decide_coherent(cplx z0, cplx z1);

/// Square-law envelope receiver. Grid mismatch throws std::domain_error.
int detect_noncoherent(const SampledSignal& rx, const SampledSignal& branch0,
                       const SampledSignal& branch1);

/// Known-phase correlation receiver; rx must already be referenced to the
/// victim's carrier phase.
int detect_coherent(const SampledSignal& rx, const SampledSignal& branch0,
                    const SampledSignal& branch1);

/// exp(j common_phase) * sum_j received(j, symbols[j]) + complex white noise
/// with per-sample, per-dimension variance n0 / dt, so a unit-amplitude
/// correlator over T sees variance n0 T per dimension. Deterministic in seed.
/// n0 = 0 gives the noiseless superposition; negative n0 throws.
SampledSignal synthesize_rx(const Scenario& sc, const std::vector<int>& symbols, double n0,
                            std::uint64_t seed, double common_phase = 0.0);

/// Stop a point once (errors >= min_errors and bits >= min_bits) or
/// bits >= max_bits.
struct StopRule {
  std::uint64_t min_errors = 200;
  std::uint64_t max_bits = 10'000'000;
  std::uint64_t min_bits = 0;

  void validate() const;
};

struct BerEstimate {
  double es_over_n0 = 0.0;
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  double ber = 0.0;
  double ci95_halfwidth = 0.0;  // 1.96 sqrt(ber (1 - ber) / bits)
  std::uint64_t seed = 0;
  bool reached_min_errors = false;  // false: stopped by max_bits
};

/// Trials per RNG block. Blocks are the unit of parallel work.
inline constexpr std::uint64_t kTrialsPerBlock = 4096;

/// Seed of the RNG stream for one block of one SNR point.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t block);

/// Monte Carlo BER of the victim at each Es/N0 (linear, victim energy).
/// Every trial draws fresh equiprobable bits for all users, a receiver phase
/// per the phase model, and a full noisy waveform. Results depend only on
/// (scenario, detector, grid, stop, seed), not on `threads` (0 = hardware).
std::vector<BerEstimate> estimate_ber(const Scenario& sc, Detector detector,
                                      const std::vector<double>& snr_grid, const StopRule& stop,
                                      std::uint64_t seed, unsigned threads = 1);

struct NoiseCalibration {
  std::uint64_t trials = 0;
  double var_re = 0.0;  // sample variance of Re <noise, u_victim,0>
  double var_im = 0.0;
  double target = 0.0;  // n0 T
};

/// Correlator-output noise variance over noise-only trials.
NoiseCalibration calibrate_noise(const Scenario& sc, double n0, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads = 1);

}  // namespace bcss

#endif  // BCSS_MC_HPP
