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


#include "bcss/ber.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcss/specfun.hpp"

namespace bcss {
namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_snr(double es_over_n0) {
  if (!std::isfinite(es_over_n0) || es_over_n0 <= 0.0)
    throw std::domain_error("Es/N0 must be positive and finite");
}

void check_users(std::size_t n_users) {
  if (n_users < 1 || n_users > static_cast<std::size_t>(kMaxPatternUsers))
    throw std::domain_error("exact pattern sums support 1 to " +
                            std::to_string(kMaxPatternUsers) + " users, got " +
                            std::to_string(n_users));
}

std::vector<cplx> weighted(const CorrelationVector& rho) {
  if (rho.energy_ratios.size() != rho.entries.size())
    throw std::domain_error("correlation vector and energy ratios differ in length");
  std::vector<cplx> w(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const cplx z = rho.entries[i].value();
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::domain_error("correlation entries must be finite");
    w[i] = rho.energy_ratios[i] * z;
  }
  return w;
}

void check_table(const BranchTable& t) {
  check_users(t.c.size());
  if (t.energy_ratios.size() != t.c.size())
    throw std::domain_error("branch table and energy ratios differ in length");
  if (t.victim < 0 || t.victim >= t.n_users()) throw std::domain_error("victim out of range");
}

// Branch means for one pattern of all users' bits.
void branch_means(const BranchTable& t, std::uint64_t pattern, cplx& mu0, cplx& mu1) {
  mu0 = {};
  mu1 = {};
  for (int j = 0; j < t.n_users(); ++j) {
    const int d = static_cast<int>((pattern >> j) & 1U);
    const double r = t.energy_ratios[static_cast<std::size_t>(j)];
    mu0 += r * t.at(j, d, 0);
    mu1 += r * t.at(j, d, 1);
  }
}

}  // namespace

SymbolPattern SymbolPattern::from_index(std::uint64_t xi, int length) {
  if (length < 0 || length > 63) throw std::domain_error("pattern length out of range");
  if (length < 63 && xi >> length) throw std::domain_error("pattern index too large");
  SymbolPattern p;
  p.xi = xi;
  p.bits.resize(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) p.bits[static_cast<std::size_t>(i)] = static_cast<int>((xi >> i) & 1U);
  return p;
}

std::vector<int> SymbolPattern::antipodal() const {
  std::vector<int> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -1 : 1;
  return out;
}

SnrPoint SnrPoint::from_db(double db) {
  if (!std::isfinite(db)) throw std::domain_error("SNR in dB must be finite");
  return {std::pow(10.0, db / 10.0)};
}

double SnrPoint::db() const { return 10.0 * std::log10(es_over_n0); }

double ber_coherent_nuser(const CorrelationVector& rho, double es_over_n0) {
  check_snr(es_over_n0);
  const std::vector<cplx> w = weighted(rho);
  check_users(w.size() + 1);
  const std::uint64_t count = std::uint64_t{1} << w.size();
  const double root = std::sqrt(es_over_n0);
  CompensatedSum acc;
  for (std::uint64_t xi = 0; xi < count; ++xi) {
    double s = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += ((xi >> i) & 1U ? -1.0 : 1.0) * w[i].real();
    acc.add(specfun::gaussian_q(std::fabs(s) * root));
  }
  return acc.value() / static_cast<double>(count);
}

double ber_coherent_derived(const BranchTable& table, double es_over_n0, double victim_theta) {
  check_snr(es_over_n0);
  check_table(table);
  const std::uint64_t count = std::uint64_t{1} << table.n_users();
  const double root = std::sqrt(es_over_n0);
  const cplx derotate = std::polar(1.0, -victim_theta);
  CompensatedSum acc;
  for (std::uint64_t pattern = 0; pattern < count; ++pattern) {
    cplx mu0;
    cplx mu1;
    branch_means(table, pattern, mu0, mu1);
    const int d = static_cast<int>((pattern >> table.victim) & 1U);
    const double margin = ((d == 0 ? mu0 - mu1 : mu1 - mu0) * derotate).real();
    acc.add(specfun::gaussian_q(margin * root));
  }
  return acc.value() / static_cast<double>(count);
}

double ber_nc_single(double es_over_n0) {
  check_snr(es_over_n0);
  return 0.5 * std::exp(-0.5 * es_over_n0);
}

double ber_nc_twouser(const ComplexCorrelation& rho, double es_over_n0, ExponentForm form) {
  check_snr(es_over_n0);
  const double mag = rho.magnitude();
  if (!std::isfinite(mag) || mag > 1.0 + 1e-12)
    throw std::domain_error("two-user correlation magnitude exceeds 1");
  const double q = 1.0 + rho.re * rho.re + rho.im * rho.im + 2.0 * rho.re;  // |1 + rho|^2
  const double expo = form == ExponentForm::kTemplate ? q : std::sqrt(std::max(q, 0.0));
  const double matched = 0.5 * std::exp(-0.5 * es_over_n0 * expo);
  // X = AT and Y = AT |rho| in units of sigma: AT / sigma = sqrt(2 Es/N0).
  const double x = std::sqrt(2.0 * es_over_n0);
  const double crossed = specfun::rician_pair_error(x, x * mag, 1.0);
  return 0.5 * matched + 0.5 * crossed;
}

double ber_nc_nuser_paper(const CorrelationVector& rho, double es_over_n0,
                          const NcPaperOptions& opt) {
  check_snr(es_over_n0);
  const std::vector<cplx> w = weighted(rho);
  check_users(w.size() + 1);
  const std::uint64_t count = std::uint64_t{1} << w.size();
  const double scale = std::sqrt(2.0 * es_over_n0);  // AT / sigma

  double first_expo = 1.0;
  for (const cplx& z : w) first_expo += std::norm(z) + 2.0 * z.real();
  if (opt.exponent == ExponentForm::kPrintedRoot) first_expo = std::sqrt(std::max(first_expo, 0.0));
  CompensatedSum acc;
  acc.add(0.5 * std::exp(-0.5 * es_over_n0 * first_expo));

  for (std::uint64_t xi = 1; xi < count; ++xi) {
    cplx s_bar;
    cplx s;
    for (std::size_t i = 0; i < w.size(); ++i) ((xi >> i) & 1U ? s : s_bar) += w[i];
    double x;
    double y;
    if (opt.printed_amplitudes) {
      x = scale * std::abs(1.0 + 2.0 * s_bar * s_bar + 2.0 * s_bar);
      y = scale * std::sqrt(2.0) * std::abs(s);
    } else {
      x = scale * std::abs(1.0 + s_bar);
      y = scale * std::abs(s);
    }
    // Arguments of Q1 and the exp * I0 product, sigma = 1.
    const double a = y / std::sqrt(2.0);
    const double b = x / std::sqrt(2.0);
    const double d = a - b;
    const double weight = opt.printed_weighting ? 1.0 : 0.5;
    const double term =
        specfun::marcum_q1(a, b) - weight * std::exp(-0.5 * d * d) * specfun::bessel_i0e(a * b);
    if (!(term >= -1e-15 && term <= 1.0 + 1e-15))
      throw FormulaInconsistencyError(
          "pair term for pattern " + std::to_string(xi) + " is " + std::to_string(term),
          static_cast<std::int64_t>(xi), term);
    acc.add(term);
  }
  const double p = acc.value() / static_cast<double>(count);
  if (!(p >= -1e-15 && p <= 1.0 + 1e-15))
    throw FormulaInconsistencyError("N-user expression is " + std::to_string(p), -1, p);
  return p;
}

double ber_nc_nuser_derived(const BranchTable& table, double es_over_n0) {
  check_snr(es_over_n0);
  check_table(table);
  const std::uint64_t count = std::uint64_t{1} << table.n_users();
  const double scale = std::sqrt(2.0 * es_over_n0);
  CompensatedSum acc;
  for (std::uint64_t pattern = 0; pattern < count; ++pattern) {
    cplx mu0;
    cplx mu1;
    branch_means(table, pattern, mu0, mu1);
    const int d = static_cast<int>((pattern >> table.victim) & 1U);
    const double x = scale * std::abs(d == 0 ? mu0 : mu1);
    const double y = scale * std::abs(d == 0 ? mu1 : mu0);
    acc.add(specfun::rician_pair_error(x, y, 1.0));
  }
  return acc.value() / static_cast<double>(count);
}

double ber_nc_nuser_derived(const Scenario& sc, double es_over_n0) {
  return ber_nc_nuser_derived(build_branch_correlations(sc), es_over_n0);
}

BranchTable matched_branch_table(const CorrelationVector& rho) {
  if (rho.energy_ratios.size() != rho.entries.size())
    throw std::domain_error("correlation vector and energy ratios differ in length");
  BranchTable t;
  t.victim = 0;
  t.c.resize(rho.size() + 1);
  t.energy_ratios.assign(rho.size() + 1, 1.0);
  t.c[0][0][0] = 1.0;
  t.c[0][1][1] = 1.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const cplx z = rho.entries[i].value();
    t.c[i + 1][0][0] = z;
    t.c[i + 1][1][1] = z;
    t.energy_ratios[i + 1] = rho.energy_ratios[i];
  }
  return t;
}

}  // namespace bcss
