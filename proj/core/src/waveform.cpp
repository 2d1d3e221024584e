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


#include "bcss/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace bcss {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_user(const ChirpParams& params, int m, int b) {
  if (m < 0 || m >= params.n_users)
    throw std::domain_error("user index " + std::to_string(m) + " outside [0, " +
                            std::to_string(params.n_users) + ")");
  if (b != 0 && b != 1) throw std::domain_error("bit must be 0 or 1");
}

struct Registry {
  std::mutex mu;
  std::map<std::string, PhaseLawFactory> factories;

  Registry() {
    factories["linear"] = [](const ChirpParams& p, const std::vector<double>&) {
      return linear_law(p);
    };
    factories["poly-sweep"] = [](const ChirpParams& p, const std::vector<double>& c) {
      return poly_sweep_law(p, c);
    };
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

void ChirpParams::validate() const {
  if (n_users < 1) throw std::domain_error("n_users must be >= 1");
  if (!(symbol_duration > 0.0) || !std::isfinite(symbol_duration))
    throw std::domain_error("symbol_duration must be positive");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw std::domain_error("amplitude must be positive");
}

void UserOffset::validate(double symbol_duration) const {
  if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon >= symbol_duration)
    throw std::domain_error("delay must lie in [0, T)");
  if (!std::isfinite(delta_f) || !std::isfinite(theta))
    throw std::domain_error("Doppler and phase must be finite");
  if (!(symbol_energy > 0.0) || !std::isfinite(symbol_energy))
    throw std::domain_error("symbol energy must be positive");
}

void register_phase_law(const std::string& family, PhaseLawFactory factory) {
  if (family.empty()) throw std::invalid_argument("phase law family name is empty");
  if (!factory) throw std::invalid_argument("phase law factory is empty");
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.factories[family] = std::move(factory);
}

std::vector<std::string> registered_phase_laws() {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  std::vector<std::string> names;
  for (const auto& [name, f] : r.factories) names.push_back(name);
  return names;
}

PhaseLaw make_phase_law(const std::string& family, const ChirpParams& params,
                        const std::vector<double>& coeffs) {
  PhaseLawFactory factory;
  {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto it = r.factories.find(family);
    if (it != r.factories.end()) factory = it->second;
  }
  if (!factory) {
    std::string known;
    for (const auto& n : registered_phase_laws()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown chirp family '" + family + "' (available: " + known +
                                ")");
  }
  return factory(params, coeffs);
}

double linear_phase(const ChirpParams& params, int m, int b, double t) {
  check_user(params, m, b);
  const double T = params.symbol_duration;
  const double n = params.n_users;
  const double u = t + m * T / n + b * T;
  return std::numbers::pi * n / (T * T) * u * u;
}

PhaseLaw linear_law(const ChirpParams& params) {
  params.validate();
  return {"linear", [params](int m, int b, double t) { return linear_phase(params, m, b, t); }};
}

PhaseLaw poly_sweep_law(const ChirpParams& params, std::vector<double> coeffs) {
  params.validate();
  if (coeffs.empty()) throw std::invalid_argument("poly-sweep needs at least one coefficient");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw std::invalid_argument("poly-sweep coefficients must be finite");
  // Antiderivative G(u) = sum_i c_i u^(i+1) / (i+1), evaluated by Horner.
  std::vector<double> g(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) g[i] = coeffs[i] / static_cast<double>(i + 1);
  return {"poly-sweep", [params, g = std::move(g)](int m, int b, double t) {
            check_user(params, m, b);
            const double T = params.symbol_duration;
            const double n = params.n_users;
            const double u = t / T;
            double acc = 0.0;
            for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * u + *it;
            return kTwoPi * ((m + b * n) * u + n * u * acc);
          }};
}

int min_samples_per_symbol(const ChirpParams& params) { return 8 * params.n_users; }

SampledSignal sample_symbol(const ChirpParams& params, const PhaseLaw& law, int m, int b,
                            int samples_per_symbol) {
  params.validate();
  check_user(params, m, b);
  if (!law.phase) throw std::invalid_argument("phase law has no phase function");
  if (samples_per_symbol < min_samples_per_symbol(params))
    throw std::domain_error("samples_per_symbol " + std::to_string(samples_per_symbol) +
                            " below the floor of 8 N = " +
                            std::to_string(min_samples_per_symbol(params)));
  SampledSignal out;
  out.dt = params.symbol_duration / samples_per_symbol;
  out.samples.resize(static_cast<std::size_t>(samples_per_symbol));
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] = std::polar(params.amplitude, law.phase(m, b, out.time(i)));
  return out;
}

std::size_t delay_in_samples(double epsilon, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("sample spacing must be positive");
  if (epsilon < 0.0) throw std::domain_error("delay must be non-negative");
  const double steps = epsilon / dt;
  const double rounded = std::round(steps);
  if (std::fabs(steps - rounded) > 1e-9 * std::max(1.0, steps))
    throw std::domain_error("delay is not a multiple of the sample spacing");
  return static_cast<std::size_t>(rounded);
}

SampledSignal apply_offset(const SampledSignal& sig, const UserOffset& off, DelayFill fill) {
  if (sig.samples.empty()) throw std::domain_error("cannot offset an empty signal");
  off.validate(sig.duration());
  const std::size_t n = sig.size();
  const std::size_t shift = delay_in_samples(off.epsilon, sig.dt);
  if (shift >= n) throw std::domain_error("delay must be shorter than the symbol");

  SampledSignal out;
  out.dt = sig.dt;
  out.samples.assign(n, cplx{});
  const cplx rot = std::polar(1.0, off.theta);
  const double w = kTwoPi * off.delta_f;
  for (std::size_t i = 0; i < n; ++i) {
    cplx v;
    if (i >= shift) {
      v = sig.samples[i - shift];
    } else if (fill == DelayFill::kRepeat) {
      v = sig.samples[i + n - shift];
    } else {
      continue;
    }
    out.samples[i] = v * rot * std::polar(1.0, w * out.time(i));
  }
  return out;
}

double signal_energy(const SampledSignal& sig) {
  if (sig.samples.empty()) throw std::domain_error("energy of an empty signal");
  double e = 0.0;
  for (const auto& s : sig.samples) e += std::norm(s);
  return e * sig.dt;
}

}  // namespace bcss
