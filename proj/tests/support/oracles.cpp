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


#include "oracles.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bcss::oracle {
namespace {

double integrate_from(double lower, const std::function<double(double)>& f) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  gsl_function g;
  g.function = [](double x, void* p) { return (*static_cast<std::function<double(double)>*>(p))(x); };
  g.params = const_cast<std::function<double(double)>*>(&f);
  double result = 0.0;
  double err = 0.0;
  const int status = gsl_integration_qagiu(&g, lower, 1e-15, 1e-13, 2000, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw std::runtime_error(std::string("oracle quadrature: ") + gsl_strerror(status));
  return result;
}

// log I_nu(z) from the standard library, with the large-argument form above
// the double range.
double log_bessel_i(double nu, double z) {
  if (z < 600.0) return std::log(std::cyl_bessel_i(nu, z));
  return z - 0.5 * std::log(2.0 * std::numbers::pi * z) +
         std::log1p(-(4.0 * nu * nu - 1.0) / (8.0 * z));
}

double rice_pdf(double r, double nu, double sigma) {
  if (r <= 0.0) return 0.0;
  const double s2 = sigma * sigma;
  const double z = r * nu / s2;
  return r / s2 * std::exp(-(r * r + nu * nu) / (2.0 * s2) + log_bessel_i(0.0, z));
}

}  // namespace

double gaussian_tail_trapezoid(double x, double h) {
  const double upper = x + 40.0;
  const auto n = static_cast<long>(std::ceil((upper - x) / h));
  const double step = (upper - x) / static_cast<double>(n);
  auto phi = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  double s = 0.5 * (phi(x) + phi(upper));
  for (long i = 1; i < n; ++i) s += phi(x + static_cast<double>(i) * step);
  // Euler-Maclaurin end correction, phi' = -t phi
  const double d = -upper * phi(upper) + x * phi(x);
  return s * step - step * step / 12.0 * d;
}

double i0_power_series(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= (0.5 * x) * (0.5 * x) / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-14 * sum) break;
  }
  return sum;
}

double marcum_q_quadrature(int k, double a, double b) {
  if (a == 0.0) {
    const std::function<double(double)> f = [k](double x) {
      return std::pow(x, 2 * k - 1) * std::exp(-0.5 * x * x) /
             (std::pow(2.0, k - 1) * std::tgamma(k));
    };
    return integrate_from(b, f);
  }
  const std::function<double(double)> f = [k, a](double x) {
    if (x <= 0.0) return 0.0;
    return x * std::pow(x / a, k - 1) *
           std::exp(-0.5 * (x * x + a * a) + log_bessel_i(k - 1.0, a * x));
  };
  return integrate_from(b, f);
}

double marcum_q1_chi2(double a, double b) {
  if (b == 0.0) return 1.0;
  if (a == 0.0) return std::exp(-0.5 * b * b);
  boost::math::non_central_chi_squared dist(2.0, a * a);
  return boost::math::cdf(boost::math::complement(dist, b * b));
}

double rician_pair_trapezoid(double x, double y, double sigma, double upper, int points) {
  const double h = upper / (points - 1);
  std::vector<double> f0(static_cast<std::size_t>(points));
  std::vector<double> f1(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    f0[static_cast<std::size_t>(i)] = rice_pdf(i * h, x, sigma);
    f1[static_cast<std::size_t>(i)] = rice_pdf(i * h, y, sigma);
  }
  // Outer trapezoid over r1 of f1(r1) * inner trapezoid of f0 over [0, r1].
  double cum = 0.0;
  double total = 0.0;
  for (int i = 0; i < points; ++i) {
    if (i > 0) cum += 0.5 * h * (f0[static_cast<std::size_t>(i - 1)] + f0[static_cast<std::size_t>(i)]);
    const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    total += w * f1[static_cast<std::size_t>(i)] * cum;
  }
  return total * h;
}

double appendix_quadrature(double p, double c, double beta, double alpha) {
  const std::function<double(double)> f = [=](double x) {
    if (x <= 0.0) return 0.0;
    return x * std::exp(-0.5 * p * p * x * x + log_bessel_i(0.0, c * x)) *
           marcum_q1_chi2(beta, alpha * x);
  };
  return integrate_from(0.0, f);
}

}  // namespace bcss::oracle
