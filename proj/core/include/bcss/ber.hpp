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


#ifndef BCSS_BER_HPP
#define BCSS_BER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcss/xcorr.hpp"

namespace bcss {

/// Largest user count accepted by the exact pattern sums.
inline constexpr int kMaxPatternUsers = 24;

/// Interferer symbol pattern xi = sum_i bits[i] 2^i.
struct SymbolPattern {
  std::uint64_t xi = 0;
  std::vector<int> bits;

  static SymbolPattern from_index(std::uint64_t xi, int length);
  /// (-1)^bits[i], the antipodal form used by the coherent expression.
  std::vector<int> antipodal() const;
};

/// Es/N0 as a linear ratio.
struct SnrPoint {
  double es_over_n0 = 1.0;

  static SnrPoint from_db(double db);
  double db() const;
};

/// Average over all 2^(N-1) antipodal patterns b of
///   Q( sqrt( (1 + sum_j r_j Re(rho_j) b_j)^2 Es/N0 ) ),
/// r_j = sqrt(Es_j/Es_victim). An empty vector gives Q(sqrt(Es/N0)).
double ber_coherent_nuser(const CorrelationVector& rho, double es_over_n0);

/// Coherent detection with a known phase, using the full branch table:
/// average over all user bit patterns of Q(Re(mu_d - mu_{1-d}) sqrt(Es/N0)),
/// where mu_v = sum_j r_j at(j, d_j, v) exp(-j theta_victim).
double ber_coherent_derived(const BranchTable& table, double es_over_n0,
                            double victim_theta = 0.0);

/// 1/2 exp(-Es/(2 N0)).
double ber_nc_single(double es_over_n0);

/// Exponent of the term where all interferers hit the matched branch.
enum class ExponentForm {
  kTemplate,  // exp(-Es |1 + rho|^2 / (2 N0)), the single-user template
  kPrintedRoot,  // exp(-Es sqrt(1 + |rho|^2 + 2 Re rho) / (2 N0))
};

/// Two users, noncoherent: mean of the interferer-sent-0 term
/// 1/2 exp(-Es |1+rho|^2/(2 N0)) and the interferer-sent-1 Rician pair term
/// with X = AT and Y = AT |rho|, sigma^2 = N0 T.
/// |rho| > 1 throws std::domain_error.
double ber_nc_twouser(const ComplexCorrelation& rho, double es_over_n0,
                      ExponentForm form = ExponentForm::kTemplate);

/// Raised when a literal N-user expression leaves [0, 1].
class FormulaInconsistencyError : public std::runtime_error {
 public:
  FormulaInconsistencyError(const std::string& what, std::int64_t xi, double value)
      : std::runtime_error(what), xi_(xi), value_(value) {}
  /// The offending pattern, or -1 when only the total is out of range.
  std::int64_t xi() const { return xi_; }
  double value() const { return value_; }

 private:
  std::int64_t xi_;
  double value_;
};

/// Variants of the printed N-user noncoherent expression. The defaults give
/// the reconciled form: pair terms carry the 1/2 of the two-user result,
/// X = AT |1 + bbar^T rho|, Y = AT |b^T rho|, and the xi = 0 term uses the
/// template exponent Es (1 + sum_k (|rho_k|^2 + 2 Re rho_k)) / (2 N0).
struct NcPaperOptions {
  ExponentForm exponent = ExponentForm::kTemplate;
  /// Pair terms as printed: Q1 - exp(.) I0(.) without the 1/2.
  bool printed_weighting = false;
  /// Amplitudes as printed: X = AT |1 + 2 s^2 + 2 s| with s = bbar^T rho and
  /// Y = AT sqrt(2) |b^T rho| (complex products).
  bool printed_amplitudes = false;
};

/// 2^-(N-1) [ first term + sum_{xi=1}^{2^(N-1)-1} pair term(xi) ] with
/// rho weighted by the energy ratios. Throws FormulaInconsistencyError when a
/// pair term or the total leaves [0, 1]; std::domain_error above
/// kMaxPatternUsers users.
double ber_nc_nuser_paper(const CorrelationVector& rho, double es_over_n0,
                          const NcPaperOptions& opt = {});

/// Noncoherent N-user BER from the full branch table: for every pattern of all
/// users' bits (victim included), mu_v = sum_j r_j at(j, d_j, v) and the
/// victim errs when the envelope of branch 1 - d exceeds that of branch d:
///   rician_pair_error(|mu_d|, |mu_{1-d}|) at sigma = 1 after scaling by
///   sqrt(2 Es/N0). Uniform average over patterns, compensated summation.
double ber_nc_nuser_derived(const BranchTable& table, double es_over_n0);

/// Convenience: build the branch table of a scenario and evaluate.
double ber_nc_nuser_derived(const Scenario& sc, double es_over_n0);

/// A table holding only matched-branch correlations (at(j, d, d) = rho_j,
/// cross terms zero), i.e. the interference model of the closed forms above.
BranchTable matched_branch_table(const CorrelationVector& rho);

}  // namespace bcss

#endif  // BCSS_BER_HPP
