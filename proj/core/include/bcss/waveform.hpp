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


#ifndef BCSS_WAVEFORM_HPP
#define BCSS_WAVEFORM_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace bcss {

using cplx = std::complex<double>;

/// Signal-set parameters: N users, symbol duration T, amplitude A.
/// The real passband symbol energy is Es = A^2 T / 2; the defaults give Es = 1.
struct ChirpParams {
  int n_users = 1;
  double symbol_duration = 1.0;
  double amplitude = 1.4142135623730951;

  void validate() const;
  double symbol_energy() const { return 0.5 * amplitude * amplitude * symbol_duration; }
};

/// Instantaneous phase phi(m, b, t) in radians for user m sending bit b.
using PhaseFn = std::function<double(int m, int b, double t)>;

struct PhaseLaw {
  std::string family;
  PhaseFn phase;
};

/// Builds a phase law for a given signal set. `coeffs` carries the
/// family-specific shape parameters (empty for "linear").
using PhaseLawFactory =
    std::function<PhaseLaw(const ChirpParams&, const std::vector<double>& coeffs)>;

/// Registers (or replaces) a phase-law family. Thread-safe.
void register_phase_law(const std::string& family, PhaseLawFactory factory);

/// Instantiates a registered family. Unknown names throw std::invalid_argument
/// whose message lists the registered families.
PhaseLaw make_phase_law(const std::string& family, const ChirpParams& params,
                        const std::vector<double>& coeffs = {});

/// Sorted names of all registered families. "linear" and "poly-sweep" are
/// always present.
std::vector<std::string> registered_phase_laws();

/// phi = pi (N/T^2) (t + mT/N + bT)^2. The instantaneous frequency sweeps
/// from (m + bN)/T to (m + (b+1)N)/T over [0, T].
double linear_phase(const ChirpParams& params, int m, int b, double t);

/// The "linear" family.
PhaseLaw linear_law(const ChirpParams& params);

/// The "poly-sweep" family: the instantaneous frequency is
///   f(t) = (m + bN)/T + (N/T) g(t/T),  g(u) = sum_i coeffs[i] u^i,
/// so a shape with g(0) = 0 and g(1) = 1 stays inside the user's subband.
/// coeffs = {0, 1} reproduces the linear law up to a constant phase.
/// Nonlinear chirp families are supplied this way from configuration.
PhaseLaw poly_sweep_law(const ChirpParams& params, std::vector<double> coeffs);

/// Complex baseband waveform on a uniform grid. Sample i represents the cell
/// [i dt, (i+1) dt) and is taken at its midpoint.
struct SampledSignal {
  std::vector<cplx> samples;
  double dt = 0.0;

  std::size_t size() const { return samples.size(); }
  double duration() const { return dt * static_cast<double>(samples.size()); }
  double time(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dt; }
};

/// Per-user impairments relative to the victim receiver.
struct UserOffset {
  double epsilon = 0.0;        // delay, 0 <= epsilon < T
  double delta_f = 0.0;        // Doppler shift in Hz
  double theta = 0.0;          // fixed phase rotation in radians
  double symbol_energy = 1.0;  // Es of this user

  /// Throws std::domain_error on a delay outside [0, T) or Es <= 0.
  void validate(double symbol_duration) const;
};

/// How the part of the window before a delayed symbol arrives is filled.
enum class DelayFill {
  kZero,    // nothing: only the in-window part of the symbol is seen
  kRepeat,  // the previous copy of the same symbol (cyclic extension)
};

/// Minimum samples per symbol accepted by sample_symbol.
int min_samples_per_symbol(const ChirpParams& params);

/// A * exp(j phi(m, b, t_i)) at the cell midpoints of a symbol.
/// Throws std::domain_error below 8 N samples per symbol or for an invalid m/b.
SampledSignal sample_symbol(const ChirpParams& params, const PhaseLaw& law, int m, int b,
                            int samples_per_symbol);

/// Delays by epsilon (which must sit on the sample grid), then applies the
/// Doppler rotation exp(j 2 pi delta_f t) at receiver time t and exp(j theta).
/// symbol_energy is not applied here.
SampledSignal apply_offset(const SampledSignal& sig, const UserOffset& off,
                           DelayFill fill = DelayFill::kZero);

/// sum |s_i|^2 dt. Empty input throws std::domain_error.
double signal_energy(const SampledSignal& sig);

/// Number of samples that represent a delay, or std::domain_error when the
/// delay is not a multiple of dt.
std::size_t delay_in_samples(double epsilon, double dt);

}  // namespace bcss

#endif  // BCSS_WAVEFORM_HPP
