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


#include "bcss/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bcss {

void Scenario::validate() const {
  chirp.validate();
  if (static_cast<int>(offsets.size()) != chirp.n_users)
    throw std::domain_error("scenario has " + std::to_string(offsets.size()) +
                            " offsets for " + std::to_string(chirp.n_users) + " users");
  if (victim_user < 0 || victim_user >= chirp.n_users)
    throw std::domain_error("victim user out of range");
  if (samples_per_symbol < min_samples_per_symbol(chirp))
    throw std::domain_error("samples_per_symbol below the floor of 8 N");
  for (const auto& off : offsets) {
    off.validate(chirp.symbol_duration);
    (void)delay_in_samples(off.epsilon, dt());
  }
  (void)law();
}

PhaseLaw Scenario::law() const { return make_phase_law(family, chirp, family_coeffs); }

double Scenario::amplitude(int j) const {
  return std::sqrt(2.0 * offsets.at(static_cast<std::size_t>(j)).symbol_energy /
                   chirp.symbol_duration);
}

double Scenario::energy_ratio(int j) const {
  return std::sqrt(offsets.at(static_cast<std::size_t>(j)).symbol_energy /
                   offsets.at(static_cast<std::size_t>(victim_user)).symbol_energy);
}

SampledSignal Scenario::received(int j, int b) const {
  ChirpParams p = chirp;
  p.amplitude = amplitude(j);
  const SampledSignal s = sample_symbol(p, law(), j, b, samples_per_symbol);
  return apply_offset(s, offsets.at(static_cast<std::size_t>(j)), delay_fill);
}

SampledSignal Scenario::reference(int v) const {
  ChirpParams p = chirp;
  p.amplitude = 1.0;
  return sample_symbol(p, law(), victim_user, v, samples_per_symbol);
}

int representable_samples_per_symbol(const ChirpParams& chirp, const std::vector<double>& delays,
                                     int min_per_user) {
  const int start = min_per_user * chirp.n_users;
  for (int ns = start; ns <= 64 * start; ++ns) {
    const double dt = chirp.symbol_duration / ns;
    bool ok = true;
    for (double e : delays) {
      const double steps = e / dt;
      if (std::fabs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
        ok = false;
        break;
      }
    }
    if (ok) return ns;
  }
  throw std::domain_error("no sampling rate represents the requested delays");
}

Scenario make_uniform_scenario(int n_users, double epsilon, double delta_f,
                               const ChirpParams& base) {
  Scenario sc;
  sc.chirp = base;
  sc.chirp.n_users = n_users;
  sc.chirp.validate();
  UserOffset victim;
  victim.symbol_energy = sc.chirp.symbol_energy();
  sc.offsets.assign(static_cast<std::size_t>(n_users), victim);
  for (int j = 1; j < n_users; ++j) {
    sc.offsets[static_cast<std::size_t>(j)].epsilon = epsilon;
    sc.offsets[static_cast<std::size_t>(j)].delta_f = delta_f;
  }
  sc.samples_per_symbol = representable_samples_per_symbol(sc.chirp, {epsilon});
  sc.validate();
  return sc;
}

}  // namespace bcss
