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


#ifndef BCSS_SCENARIO_HPP
#define BCSS_SCENARIO_HPP

#include <vector>
#include <string>

#include "bcss/waveform.hpp"

namespace bcss {

/// Receiver phase model for Monte Carlo trials.
enum class PhaseModel {
  kUniformRandom,  // one uniform phase per trial, common to the whole received signal
  kFixed,          // no extra phase; only UserOffset::theta applies
};

/// A multi-user link seen by the receiver of `victim_user`.
struct Scenario {
  ChirpParams chirp;
  std::string family = "linear";
  std::vector<double> family_coeffs;
  int samples_per_symbol = 0;
  std::vector<UserOffset> offsets;  // one per user
  int victim_user = 0;
  PhaseModel phase_model = PhaseModel::kUniformRandom;
  DelayFill delay_fill = DelayFill::kZero;

  /// Checks user counts, offsets, the family name, the sampling floor and that
  /// every delay sits on the sample grid. Throws std::domain_error or
  /// std::invalid_argument.
  void validate() const;

  PhaseLaw law() const;
  double dt() const { return chirp.symbol_duration / samples_per_symbol; }

  /// Transmit amplitude of user j, sqrt(2 Es_j / T).
  double amplitude(int j) const;

  /// sqrt(Es_j / Es_victim).
  double energy_ratio(int j) const;

  /// User j sending bit b as seen by the receiver: amplitude, delay, Doppler
  /// and fixed phase applied.
  SampledSignal received(int j, int b) const;

  /// Receiver template for branch v: the victim's bit-v chirp at unit amplitude.
  SampledSignal reference(int v) const;
};

/// Smallest samples-per-symbol >= 64 N on which every delay is exactly
/// representable (searched up to 64 times that).
int representable_samples_per_symbol(const ChirpParams& chirp,
                                     const std::vector<double>& delays, int min_per_user = 64);

/// N users with user 0 as victim; every other user has delay `epsilon` and
/// Doppler `delta_f`; all energies equal to chirp.symbol_energy().
Scenario make_uniform_scenario(int n_users, double epsilon, double delta_f = 0.0,
                               const ChirpParams& base = {});

}  // namespace bcss

#endif  // BCSS_SCENARIO_HPP
