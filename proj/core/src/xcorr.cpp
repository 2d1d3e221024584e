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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bcss {
namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) {
  if (std::fabs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// (1/T) int_a^b exp(j pi N/T^2 [(t + s)^2 - (t + ck)^2] + j 2 pi df t) dt
cplx linear_segment(double n, double T, double s, double ck, double df, double a, double b) {
  const double f = n * (s - ck) / (T * T) + df;
  const double phi0 = kPi * n * (s * s - ck * ck) / (T * T);
  const double len = b - a;
  return std::polar((len / T) * sinc(kPi * f * len), phi0 + kPi * f * (a + b));
}

void check_grids(const SampledSignal& a, const SampledSignal& b) {
  if (a.size() != b.size() || a.samples.empty())
    throw std::domain_error("correlation needs two nonempty signals of equal length");
  if (std::fabs(a.dt - b.dt) > 1e-12 * a.dt)
    throw std::domain_error("correlation needs signals on the same grid");
}

}  // namespace

cplx inner_product(const SampledSignal& a, const SampledSignal& b) {
  check_grids(a, b);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx x = a.samples[i];
    const cplx y = b.samples[i];
    re += x.real() * y.real() + x.imag() * y.imag();
    im += x.imag() * y.real() - x.real() * y.imag();
  }
  return {re * a.dt, im * a.dt};
}

ComplexCorrelation xcorr_numeric(const SampledSignal& a, const SampledSignal& b) {
  check_grids(a, b);
  const double ea = signal_energy(a);
  const double eb = signal_energy(b);
  if (!(ea > 0.0) || !(eb > 0.0)) throw std::domain_error("correlation of a zero-energy signal");
  return ComplexCorrelation::from(inner_product(a, b) / std::sqrt(ea * eb));
}

ComplexCorrelation xcorr_numeric(const SampledSignal& a, const SampledSignal& b,
                                 double reference_energy) {
  if (!(reference_energy > 0.0)) throw std::domain_error("reference energy must be positive");
  return ComplexCorrelation::from(inner_product(a, b) / reference_energy);
}

double normalized_doppler(const ChirpParams& params, double delta_f) {
  return delta_f * params.symbol_duration / params.n_users;
}

double doppler_from_normalized(const ChirpParams& params, double nu) {
  return nu * params.n_users / params.symbol_duration;
}

ComplexCorrelation rho_linear(const ChirpParams& params, int m, int bm, int k, int bk,
                              double delta_f, double epsilon, DelayFill fill) {
  params.validate();
  const int n_users = params.n_users;
  if (m < 0 || m >= n_users || k < 0 || k >= n_users)
    throw std::domain_error("user index out of range");
  if ((bm != 0 && bm != 1) || (bk != 0 && bk != 1)) throw std::domain_error("bit must be 0 or 1");
  const double T = params.symbol_duration;
  if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon >= T)
    throw std::domain_error("delay must lie in [0, T)");
  if (!std::isfinite(delta_f)) throw std::domain_error("Doppler must be finite");

  const double n = n_users;
  const double cm = m * T / n + bm * T;
  const double ck = k * T / n + bk * T;
  cplx rho = linear_segment(n, T, cm - epsilon, ck, delta_f, epsilon, T);
  if (fill == DelayFill::kRepeat && epsilon > 0.0)
    rho += linear_segment(n, T, cm - epsilon + T, ck, delta_f, 0.0, epsilon);
  return ComplexCorrelation::from(rho);
}

ComplexCorrelation rho_doppler_linear(const ChirpParams& params, int m, int k, double delta_f) {
  return rho_linear(params, m, 0, k, 0, delta_f, 0.0);
}

ComplexCorrelation rho_doppler_delay_linear(const ChirpParams& params, int m, int k,
                                            double delta_f, double epsilon, DelayFill fill) {
  return rho_linear(params, m, 0, k, 0, delta_f, epsilon, fill);
}

BranchTable build_branch_correlations(const Scenario& sc, CorrelationSource source) {
  sc.validate();
  if (source == CorrelationSource::kAuto)
    source = sc.family == "linear" ? CorrelationSource::kClosedForm : CorrelationSource::kNumeric;
  if (source == CorrelationSource::kClosedForm && sc.family != "linear")
    throw std::invalid_argument("closed-form correlations exist only for the linear family");

  const int n = sc.chirp.n_users;
  BranchTable t;
  t.victim = sc.victim_user;
  t.c.resize(static_cast<std::size_t>(n));
  t.energy_ratios.resize(static_cast<std::size_t>(n));

  std::array<SampledSignal, 2> refs;
  if (source == CorrelationSource::kNumeric) refs = {sc.reference(0), sc.reference(1)};
  const double T = sc.chirp.symbol_duration;

  for (int j = 0; j < n; ++j) {
    const auto& off = sc.offsets[static_cast<std::size_t>(j)];
    t.energy_ratios[static_cast<std::size_t>(j)] = sc.energy_ratio(j);
    for (int d = 0; d < 2; ++d) {
      SampledSignal rx;
      if (source == CorrelationSource::kNumeric) rx = sc.received(j, d);
      for (int v = 0; v < 2; ++v) {
        cplx z;
        if (source == CorrelationSource::kNumeric) {
          z = inner_product(rx, refs[static_cast<std::size_t>(v)]) / (sc.amplitude(j) * T);
        } else {
          z = rho_linear(sc.chirp, j, d, sc.victim_user, v, off.delta_f, off.epsilon,
                         sc.delay_fill)
                  .value() *
              std::polar(1.0, off.theta);
        }
        t.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)][static_cast<std::size_t>(v)] = z;
      }
    }
  }
  return t;
}

CorrelationVector project_matched(const BranchTable& table,
                                  const std::vector<int>& interferer_symbols) {
  const int n = table.n_users();
  if (static_cast<int>(interferer_symbols.size()) != n - 1)
    throw std::domain_error("expected " + std::to_string(n - 1) + " interferer symbols, got " +
                            std::to_string(interferer_symbols.size()));
  CorrelationVector out;
  std::size_t i = 0;
  for (int j = 0; j < n; ++j) {
    if (j == table.victim) continue;
    const int b = interferer_symbols[i++];
    if (b != 0 && b != 1) throw std::domain_error("symbol must be 0 or 1");
    out.entries.push_back(ComplexCorrelation::from(table.at(j, b, b)));
    out.energy_ratios.push_back(table.energy_ratios[static_cast<std::size_t>(j)]);
  }
  return out;
}

CorrelationVector build_correlation_vector(const Scenario& sc,
                                           const std::vector<int>& interferer_symbols,
                                           CorrelationSource source) {
  return project_matched(build_branch_correlations(sc, source), interferer_symbols);
}

}  // namespace bcss
