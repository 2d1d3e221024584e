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


#ifndef BCSS_SPECFUN_HPP
#define BCSS_SPECFUN_HPP

// Special functions behind the BER expressions: Gaussian Q, modified Bessel
// I0, generalized Marcum Q, the error probability of two Rician envelopes and
// the closed form of the Rician/Marcum integral used to derive it.
//
// All functions are pure and thread-safe. Invalid arguments throw
// std::domain_error.

namespace bcss::specfun {

/// Tolerances for series truncation and numeric quadrature.
struct SpecFunConfig {
  double quad_abs_tol = 1e-12;
  int quad_max_subdiv = 512;
  double series_rel_tol = 1e-17;

  /// Throws std::domain_error unless all tolerances are positive and
  /// quad_max_subdiv >= 64.
  void validate() const;
};

/// Tail probability of the standard normal distribution, Q(x) = P(Z > x).
/// Underflows gracefully to 0 for very large x.
double gaussian_q(double x);

/// Modified Bessel function of the first kind, order zero.
/// Negative arguments use the even symmetry I0(-x) = I0(x).
/// Throws std::overflow_error when the result is not representable
/// (|x| above roughly 713.98); use bessel_i0_log or bessel_i0e there.
double bessel_i0(double x);

/// log(I0(x)), finite for every finite x.
double bessel_i0_log(double x);

/// Exponentially scaled I0: exp(-|x|) * I0(x).
double bessel_i0e(double x);

/// Generalized Marcum Q-function Q_k(a, b) for integer order k >= 1,
///   Q_k(a,b) = int_b^inf x (x/a)^(k-1) exp(-(x^2+a^2)/2) I_{k-1}(a x) dx.
/// Evaluated with the Neumann series of scaled Bessel functions (Miller
/// backward recurrence), picking the form without cancellation for a < b and
/// a >= b.
double marcum_q(int k, double a, double b, const SpecFunConfig& cfg = {});

/// Shorthand for marcum_q(1, a, b).
double marcum_q1(double a, double b);

/// P(r1 > r0) for independent Rician envelopes r0 ~ Rice(x, sigma) and
/// r1 ~ Rice(y, sigma):
///   Q1(y/(sigma sqrt2), x/(sigma sqrt2)) - 1/2 exp(-(x^2+y^2)/(4 sigma^2)) I0(x y/(2 sigma^2)).
/// The exp * I0 product is evaluated in log space, so large SNR is safe.
double rician_pair_error(double x, double y, double sigma);

/// Closed form of
///   I = int_0^inf x exp(-p^2 x^2/2) I0(c x) Q1(beta, alpha x) dx
/// for p > 0 and c, beta, alpha >= 0.
double appendix_integral_closed(double p, double c, double beta, double alpha);

/// The same integral by adaptive Gauss-Kronrod quadrature of the composed
/// integrand. Used as an independent check on appendix_integral_closed.
double appendix_integral_quad(double p, double c, double beta, double alpha,
                              const SpecFunConfig& cfg = {});

/// The integrand of appendix_integral_quad at x (exposed for tests).
double appendix_integrand(double x, double p, double c, double beta, double alpha);

}  // namespace bcss::specfun

#endif  // BCSS_SPECFUN_HPP
