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


#include "bcss/specfun.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcss::specfun {
namespace {

constexpr double kSeriesCutover = 15.0;
constexpr double kDefaultSeriesTol = 1e-17;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": argument must be finite");
}

// Power series sum_k (x^2/4)^k / (k!)^2, x >= 0.
double i0_series(double x, double tol) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < tol * sum) break;
  }
  return sum;
}

// Large-argument expansion of sqrt(2 pi x) exp(-x) I0(x), x >= 15.
double i0_asymptotic_sum(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next > term) break;  // divergent tail
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// exp(-z) I_n(z) for n = 0..nmax, z >= 0, by Miller's backward recurrence
// normalized against bessel_i0e.
std::vector<double> scaled_bessel_sequence(double z, int nmax) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (z < 1e-150) {
    // Leading series term (z/2)^n / n!; exp(-z) == 1 at this scale.
    double t = 1.0;
    out[0] = 1.0;
    for (int n = 1; n <= nmax; ++n) {
      t *= 0.5 * z / n;
      out[static_cast<std::size_t>(n)] = t;
    }
    return out;
  }
  const int start = nmax + 30 + static_cast<int>(6.0 * std::sqrt(z));
  double above = 0.0;
  double cur = 1e-300;
  for (int n = start; n > 0; --n) {
    const double below = (2.0 * n / z) * cur + above;
    above = cur;
    cur = below;
    if (n - 1 <= nmax) out[static_cast<std::size_t>(n - 1)] = cur;
    if (cur > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      for (int m = n - 1; m <= nmax; ++m) out[static_cast<std::size_t>(m)] *= 1e-250;
    }
  }
  const double scale = bessel_i0e(z) / out[0];
  for (double& v : out) v *= scale;
  return out;
}

// sum_{j>=0} (z^2/4)^j n! / (j! (n+j)!), i.e. I_n(z) n! / (z/2)^n.
double normalized_in_series(int n, double z) {
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 200; ++j) {
    term *= q / (static_cast<double>(j) * (n + j));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double marcum_q1_impl(double a, double b, double tol) {
  if (b == 0.0) return 1.0;
  if (a == 0.0) return std::exp(-0.5 * b * b);
  const double z = a * b;
  const int nmax = 40 + static_cast<int>(12.0 * std::sqrt(z));
  const std::vector<double> ie = scaled_bessel_sequence(z, nmax);
  if (a < b) {
    const double r = a / b;
    double rn = 1.0;
    double sum = 0.0;
    for (int n = 0; n <= nmax; ++n) {
      const double t = rn * ie[static_cast<std::size_t>(n)];
      sum += t;
      if (n > 2 && t < tol * sum) break;
      rn *= r;
    }
    const double d = b - a;
    return std::clamp(std::exp(-0.5 * d * d) * sum, 0.0, 1.0);
  }
  const double r = b / a;
  double rn = r;
  double sum = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    const double t = rn * ie[static_cast<std::size_t>(n)];
    sum += t;
    if (n > 2 && t < tol * sum) break;
    rn *= r;
  }
  const double d = a - b;
  return std::clamp(1.0 - std::exp(-0.5 * d * d) * sum, 0.0, 1.0);
}

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

}  // namespace

void SpecFunConfig::validate() const {
  if (!(quad_abs_tol > 0.0) || !(series_rel_tol > 0.0))
    throw std::domain_error("SpecFunConfig: tolerances must be positive");
  if (quad_max_subdiv < 64) throw std::domain_error("SpecFunConfig: quad_max_subdiv must be >= 64");
}

double gaussian_q(double x) {
  require_finite(x, "gaussian_q");
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double bessel_i0e(double x) {
  require_finite(x, "bessel_i0e");
  const double ax = std::fabs(x);
  if (ax < kSeriesCutover) return i0_series(ax, kDefaultSeriesTol) * std::exp(-ax);
  return i0_asymptotic_sum(ax) / std::sqrt(2.0 * std::numbers::pi * ax);
}

double bessel_i0_log(double x) {
  require_finite(x, "bessel_i0_log");
  const double ax = std::fabs(x);
  if (ax < kSeriesCutover) return std::log(i0_series(ax, kDefaultSeriesTol));
  return ax - 0.5 * std::log(2.0 * std::numbers::pi * ax) + std::log(i0_asymptotic_sum(ax));
}

double bessel_i0(double x) {
  require_finite(x, "bessel_i0");
  const double ax = std::fabs(x);
  if (ax < kSeriesCutover) return i0_series(ax, kDefaultSeriesTol);
  const double l = bessel_i0_log(ax);
  if (l >= std::log(DBL_MAX)) throw std::overflow_error("bessel_i0: result overflows double");
  return std::exp(l);
}

double marcum_q(int k, double a, double b, const SpecFunConfig& cfg) {
  if (k < 1) throw std::domain_error("marcum_q: order must be >= 1");
  require_finite(a, "marcum_q");
  require_finite(b, "marcum_q");
  if (a < 0.0 || b < 0.0) throw std::domain_error("marcum_q: arguments must be non-negative");
  if (b == 0.0) return 1.0;
  if (a == 0.0) {
    // Q_k(0, b) is the Poisson tail exp(-b^2/2) sum_{n<k} (b^2/2)^n / n!.
    const double h = 0.5 * b * b;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < k; ++n) {
      term *= h / n;
      sum += term;
    }
    return std::clamp(std::exp(-h) * sum, 0.0, 1.0);
  }
  double q = marcum_q1_impl(a, b, cfg.series_rel_tol);
  if (k == 1) return q;

  // Q_{n+1} = Q_n + (b/a)^n exp(-(a^2+b^2)/2) I_n(ab).
  const double z = a * b;
  std::vector<double> ie;
  if (z >= 1.0) ie = scaled_bessel_sequence(z, k);
  for (int n = 1; n < k; ++n) {
    double t;
    if (z < 1.0) {
      t = std::exp(-0.5 * (a * a + b * b) + n * std::log(0.5 * b * b) - std::lgamma(n + 1.0)) *
          normalized_in_series(n, z);
    } else {
      const double ien = ie[static_cast<std::size_t>(n)];
      if (ien <= 0.0) continue;
      const double d = a - b;
      t = std::exp(-0.5 * d * d + n * std::log(b / a) + std::log(ien));
    }
    q += t;
  }
  return std::clamp(q, 0.0, 1.0);
}

double marcum_q1(double a, double b) { return marcum_q(1, a, b); }

double rician_pair_error(double x, double y, double sigma) {
  require_finite(x, "rician_pair_error");
  require_finite(y, "rician_pair_error");
  require_finite(sigma, "rician_pair_error");
  if (!(sigma > 0.0)) throw std::domain_error("rician_pair_error: sigma must be positive");
  if (x < 0.0 || y < 0.0) throw std::domain_error("rician_pair_error: amplitudes must be non-negative");
  const double a = y / (sigma * std::numbers::sqrt2);
  const double b = x / (sigma * std::numbers::sqrt2);
  const double d = a - b;
  const double p = marcum_q1(a, b) - 0.5 * std::exp(-0.5 * d * d) * bessel_i0e(a * b);
  return std::clamp(p, 0.0, 1.0);
}

double appendix_integral_closed(double p, double c, double beta, double alpha) {
  for (double v : {p, c, beta, alpha}) require_finite(v, "appendix_integral_closed");
  if (!(p > 0.0)) throw std::domain_error("appendix_integral_closed: p must be positive");
  if (c < 0.0 || beta < 0.0 || alpha < 0.0)
    throw std::domain_error("appendix_integral_closed: c, beta, alpha must be non-negative");
  const double p2 = p * p;
  const double s = p2 + alpha * alpha;
  const double rs = std::sqrt(s);
  const double q = marcum_q1(beta * p / rs, alpha * c / (p * rs));
  const double first = std::exp(0.5 * c * c / p2) * q;
  const double z = alpha * beta * c / s;
  const double second = (alpha * alpha / s) *
                        std::exp(0.5 * (c * c - p2 * beta * beta) / s + z) * bessel_i0e(z);
  return (first - second) / p2;
}

double appendix_integrand(double x, double p, double c, double beta, double alpha) {
  if (x <= 0.0) return 0.0;
  const double cx = c * x;
  const double envelope = std::log(x) - 0.5 * p * p * x * x + cx + std::log(bessel_i0e(cx));
  return std::exp(envelope) * marcum_q1(beta, alpha * x);
}

double appendix_integral_quad(double p, double c, double beta, double alpha,
                              const SpecFunConfig& cfg) {
  cfg.validate();
  for (double v : {p, c, beta, alpha}) require_finite(v, "appendix_integral_quad");
  if (!(p > 0.0)) throw std::domain_error("appendix_integral_quad: p must be positive");
  if (c < 0.0 || beta < 0.0 || alpha < 0.0)
    throw std::domain_error("appendix_integral_quad: c, beta, alpha must be non-negative");
  silence_gsl();

  // The integrand is bounded by x exp(-p^2 x^2/2 + c x), which peaks at
  // x_peak and has Gaussian width 1/p; 14 widths past the peak is below e^-98.
  const double x_peak = (c + std::sqrt(c * c + 4.0 * p * p)) / (2.0 * p * p);
  const double width = 1.0 / p;
  const double upper = x_peak + 14.0 * width;
  std::vector<double> cuts{0.0, x_peak, x_peak + 4.0 * width, upper};
  if (x_peak - 4.0 * width > 0.0) cuts.push_back(x_peak - 4.0 * width);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(static_cast<std::size_t>(cfg.quad_max_subdiv)));
  struct Params {
    double p, c, beta, alpha;
  } params{p, c, beta, alpha};
  gsl_function fn;
  fn.function = [](double x, void* raw) {
    const auto* q = static_cast<const Params*>(raw);
    return appendix_integrand(x, q->p, q->c, q->beta, q->alpha);
  };
  fn.params = &params;

  const double piece_tol = cfg.quad_abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double result = 0.0;
    double abserr = 0.0;
    const int status =
        gsl_integration_qag(&fn, cuts[i], cuts[i + 1], piece_tol, cfg.quad_abs_tol,
                            static_cast<std::size_t>(cfg.quad_max_subdiv), GSL_INTEG_GAUSS61,
                            ws.get(), &result, &abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
      throw std::runtime_error(std::string("appendix_integral_quad: ") + gsl_strerror(status));
    total += result;
  }
  return total;
}

}  // namespace bcss::specfun
