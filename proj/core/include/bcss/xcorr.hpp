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


#ifndef BCSS_XCORR_HPP
#define BCSS_XCORR_HPP

#include <array>
#include <vector>

#include "bcss/scenario.hpp"
#include "bcss/waveform.hpp"

namespace bcss {

/// Complex cross-correlation rho = re + j im.
struct ComplexCorrelation {
  double re = 0.0;
  double im = 0.0;

  static ComplexCorrelation from(cplx z) { return {z.real(), z.imag()}; }
  cplx value() const { return {re, im}; }
  double magnitude() const { return std::hypot(re, im); }
};

/// sum_i a_i conj(b_i) dt. Grids must match.
cplx inner_product(const SampledSignal& a, const SampledSignal& b);

/// <a, b> / sqrt(Ea Eb) with the actual energies of a and b.
/// Mismatched grids or a zero-energy input throw std::domain_error.
ComplexCorrelation xcorr_numeric(const SampledSignal& a, const SampledSignal& b);

/// <a, b> / reference_energy. Used for delayed signals, whose in-window energy
/// is below the nominal A^2 T the closed forms normalize by.
ComplexCorrelation xcorr_numeric(const SampledSignal& a, const SampledSignal& b,
                                 double reference_energy);

/// Normalized Doppler nu = delta_f T / N and its inverse.
double normalized_doppler(const ChirpParams& params, double delta_f);
double doppler_from_normalized(const ChirpParams& params, double nu);

/// Closed-form correlation of linear chirps
///   (1/T) int_0^T u_m(t - eps) exp(j 2 pi df t) conj(u_k(t)) dt,
/// where u_m is the unit-amplitude chirp of user m sending bit bm and u_k that
/// of user k sending bit bk. With DelayFill::kZero the integral runs over
/// [eps, T]; with kRepeat the interval [0, eps) sees the previous copy of the
/// same symbol. Removable singularities use a series of sin(x)/x.
ComplexCorrelation rho_linear(const ChirpParams& params, int m, int bm, int k, int bk,
                              double delta_f, double epsilon,
                              DelayFill fill = DelayFill::kZero);

/// rho_linear for bit 0 of both users without delay. Peaks at delta_f T = k - m
/// with magnitude 1.
ComplexCorrelation rho_doppler_linear(const ChirpParams& params, int m, int k, double delta_f);

/// rho_linear for bit 0 of both users. Throws std::domain_error unless
/// 0 <= epsilon < T.
ComplexCorrelation rho_doppler_delay_linear(const ChirpParams& params, int m, int k,
                                            double delta_f, double epsilon,
                                            DelayFill fill = DelayFill::kZero);

/// Interferer correlations seen by one victim: entry i belongs to the i-th
/// non-victim user in index order.
struct CorrelationVector {
  std::vector<ComplexCorrelation> entries;
  std::vector<double> energy_ratios;  // sqrt(Es_j / Es_victim)

  std::size_t size() const { return entries.size(); }
};

enum class CorrelationSource {
  kAuto,        // closed form for the linear family, numeric otherwise
  kClosedForm,  // linear family only
  kNumeric,     // on the scenario's sample grid
};

/// Correlation of every user j sending bit d with every victim branch v,
/// normalized by nominal energies and including UserOffset::theta:
///   at(j, d, v) = <r_j,d / A_j, u_victim,v> / T.
/// The victim's own row is included (identity for an unimpaired victim).
struct BranchTable {
  int victim = 0;
  std::vector<std::array<std::array<cplx, 2>, 2>> c;
  std::vector<double> energy_ratios;

  int n_users() const { return static_cast<int>(c.size()); }
  cplx at(int j, int d, int v) const {
    return c[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)][static_cast<std::size_t>(v)];
  }
};

BranchTable build_branch_correlations(const Scenario& sc,
                                      CorrelationSource source = CorrelationSource::kAuto);

/// The matched-branch projection: entry for interferer j is at(j, b_j, b_j).
/// interferer_symbols has one bit per non-victim user.
CorrelationVector build_correlation_vector(const Scenario& sc,
                                           const std::vector<int>& interferer_symbols,
                                           CorrelationSource source = CorrelationSource::kAuto);

/// Same projection from an existing table.
CorrelationVector project_matched(const BranchTable& table,
                                  const std::vector<int>& interferer_symbols);

}  // namespace bcss

#endif  // BCSS_XCORR_HPP
