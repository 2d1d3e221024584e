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


#include "bcss/mc.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "bcss/xcorr.hpp"

namespace bcss {
namespace {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  return threads;
}

// Runs fn(first + i) for i < count on up to `threads` workers; results in
// block order.
template <class Result, class Fn>
std::vector<Result> run_blocks(std::uint64_t first, std::uint64_t count, unsigned threads,
                               const Fn& fn) {
  std::vector<Result> out(count);
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(first + i);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::uint64_t i = w; i < count; i += workers) out[i] = fn(first + i);
    });
  return out;
}

// Precomputed waveforms plus reusable buffers for one worker.
struct Link {
  const Scenario* sc = nullptr;
  std::vector<std::array<SampledSignal, 2>> tx;  // per user and bit
  std::array<SampledSignal, 2> ref;
  double victim_theta = 0.0;

  explicit Link(const Scenario& s) : sc(&s) {
    s.validate();
    const int n = s.chirp.n_users;
    tx.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) tx[static_cast<std::size_t>(j)] = {s.received(j, 0), s.received(j, 1)};
    ref = {s.reference(0), s.reference(1)};
    victim_theta = s.offsets[static_cast<std::size_t>(s.victim_user)].theta;
  }

  std::size_t size() const { return ref[0].size(); }
  double dt() const { return ref[0].dt; }

  void synthesize(const std::vector<int>& bits, double n0, double phase, Engine& eng,
                  std::vector<cplx>& rx) const {
    const std::size_t ns = size();
    rx.assign(ns, cplx{});
    for (std::size_t j = 0; j < tx.size(); ++j) {
      const auto& s = tx[j][static_cast<std::size_t>(bits[j])].samples;
      for (std::size_t i = 0; i < ns; ++i) rx[i] += s[i];
    }
    if (phase != 0.0) {
      const double c = std::cos(phase);
      const double s = std::sin(phase);
      for (auto& v : rx) v = {c * v.real() - s * v.imag(), s * v.real() + c * v.imag()};
    }
    if (n0 > 0.0) {
      boost::random::normal_distribution<double> gauss(0.0, std::sqrt(n0 / dt()));
      for (auto& v : rx) {
        const double re = gauss(eng);
        const double im = gauss(eng);
        v += cplx{re, im};
      }
    }
  }

  cplx correlate(const std::vector<cplx>& rx, int v) const {
    const auto& r = ref[static_cast<std::size_t>(v)].samples;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
      re += rx[i].real() * r[i].real() + rx[i].imag() * r[i].imag();
      im += rx[i].imag() * r[i].real() - rx[i].real() * r[i].imag();
    }
    return {re * dt(), im * dt()};
  }
};

void draw_bits(Engine& eng, std::vector<int>& bits) {
  std::uint64_t word = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (j % 64 == 0) word = eng();
    bits[j] = static_cast<int>((word >> (j % 64)) & 1U);
  }
}

void check_n0(double n0) {
  if (!std::isfinite(n0) || n0 < 0.0) throw std::domain_error("N0 must be finite and >= 0");
}

struct BlockCount {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
};

}  // namespace

int decide_noncoherent(cplx z0, cplx z1) { return std::norm(z1) > std::norm(z0) ? 1 : 0; }

int decide_coherent(cplx z0, cplx z1) { return z1.real() > z0.real() ? 1 : 0; }

int detect_noncoherent(const SampledSignal& rx, const SampledSignal& branch0,
                       const SampledSignal& branch1) {
  return decide_noncoherent(inner_product(rx, branch0), inner_product(rx, branch1));
}

int detect_coherent(const SampledSignal& rx, const SampledSignal& branch0,
                    const SampledSignal& branch1) {
  return decide_coherent(inner_product(rx, branch0), inner_product(rx, branch1));
}

SampledSignal synthesize_rx(const Scenario& sc, const std::vector<int>& symbols, double n0,
                            std::uint64_t seed, double common_phase) {
  check_n0(n0);
  if (static_cast<int>(symbols.size()) != sc.chirp.n_users)
    throw std::domain_error("one symbol per user is required");
  for (int b : symbols)
    if (b != 0 && b != 1) throw std::domain_error("symbol must be 0 or 1");
  const Link link(sc);
  Engine eng(splitmix64(seed));
  SampledSignal out;
  out.dt = link.dt();
  link.synthesize(symbols, n0, common_phase, eng, out.samples);
  return out;
}

void StopRule::validate() const {
  if (max_bits == 0) throw std::domain_error("max_bits must be positive");
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t block) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ splitmix64(point + 0x632BE59BD9B4E019ULL));
  return splitmix64(x ^ splitmix64(block + 0x8CB92BA72F3D8DD7ULL));
}

std::vector<BerEstimate> estimate_ber(const Scenario& sc, Detector detector,
                                      const std::vector<double>& snr_grid, const StopRule& stop,
                                      std::uint64_t seed, unsigned threads) {
  stop.validate();
  threads = resolve_threads(threads);
  const Link link(sc);
  const double es = sc.offsets[static_cast<std::size_t>(sc.victim_user)].symbol_energy;
  const std::uint64_t total_blocks = (stop.max_bits + kTrialsPerBlock - 1) / kTrialsPerBlock;

  std::vector<BerEstimate> out;
  out.reserve(snr_grid.size());
  for (std::size_t point = 0; point < snr_grid.size(); ++point) {
    const double snr = snr_grid[point];
    if (!std::isfinite(snr) || snr <= 0.0) throw std::domain_error("Es/N0 must be positive");
    const double n0 = es / snr;

    auto run = [&](std::uint64_t block) {
      Engine eng(stream_seed(seed, point, block));
      boost::random::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
      std::vector<int> bits(static_cast<std::size_t>(sc.chirp.n_users));
      std::vector<cplx> rx;
      const std::uint64_t trials =
          std::min(kTrialsPerBlock, stop.max_bits - block * kTrialsPerBlock);
      BlockCount c;
      for (std::uint64_t t = 0; t < trials; ++t) {
        draw_bits(eng, bits);
        const double phase =
            sc.phase_model == PhaseModel::kUniformRandom ? phase_dist(eng) : 0.0;
        link.synthesize(bits, n0, phase, eng, rx);
        cplx z0 = link.correlate(rx, 0);
        cplx z1 = link.correlate(rx, 1);
        int decided;
        if (detector == Detector::kCoherent) {
          const cplx ref = std::polar(1.0, -(phase + link.victim_theta));
          decided = decide_coherent(z0 * ref, z1 * ref);
        } else {
          decided = decide_noncoherent(z0, z1);
        }
        c.errors += decided != bits[static_cast<std::size_t>(sc.victim_user)] ? 1 : 0;
      }
      c.bits = trials;
      return c;
    };

    BerEstimate est;
    est.es_over_n0 = snr;
    est.seed = seed;
    std::uint64_t next = 0;
    bool done = false;
    while (!done && next < total_blocks) {
      const std::uint64_t batch = std::min<std::uint64_t>(4ULL * threads, total_blocks - next);
      const auto counts = run_blocks<BlockCount>(next, batch, threads, run);
      next += batch;
      for (const auto& c : counts) {
        est.errors += c.errors;
        est.bits += c.bits;
        if (est.errors >= stop.min_errors && est.bits >= stop.min_bits) {
          est.reached_min_errors = true;
          done = true;
          break;
        }
        if (est.bits >= stop.max_bits) {
          done = true;
          break;
        }
      }
    }
    est.ber = static_cast<double>(est.errors) / static_cast<double>(est.bits);
    est.ci95_halfwidth = 1.96 * std::sqrt(est.ber * (1.0 - est.ber) / static_cast<double>(est.bits));
    out.push_back(est);
  }
  return out;
}

NoiseCalibration calibrate_noise(const Scenario& sc, double n0, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads) {
  check_n0(n0);
  if (trials < 2) throw std::domain_error("calibration needs at least two trials");
  threads = resolve_threads(threads);
  const Link link(sc);
  struct Moments {
    double sre = 0.0, sre2 = 0.0, sim = 0.0, sim2 = 0.0;
  };
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  const auto parts = run_blocks<Moments>(0, blocks, threads, [&](std::uint64_t block) {
    Engine eng(stream_seed(seed, 0, block));
    boost::random::normal_distribution<double> gauss(0.0, std::sqrt(n0 / link.dt()));
    const std::uint64_t count = std::min(kTrialsPerBlock, trials - block * kTrialsPerBlock);
    std::vector<cplx> noise(link.size());
    Moments m;
    for (std::uint64_t t = 0; t < count; ++t) {
      for (auto& v : noise) {
        const double re = gauss(eng);
        const double im = gauss(eng);
        v = {re, im};
      }
      const cplx z = link.correlate(noise, 0);
      m.sre += z.real();
      m.sre2 += z.real() * z.real();
      m.sim += z.imag();
      m.sim2 += z.imag() * z.imag();
    }
    return m;
  });
  Moments tot;
  for (const auto& p : parts) {
    tot.sre += p.sre;
    tot.sre2 += p.sre2;
    tot.sim += p.sim;
    tot.sim2 += p.sim2;
  }
  const double n = static_cast<double>(trials);
  NoiseCalibration cal;
  cal.trials = trials;
  cal.var_re = (tot.sre2 - tot.sre * tot.sre / n) / (n - 1.0);
  cal.var_im = (tot.sim2 - tot.sim * tot.sim / n) / (n - 1.0);
  cal.target = n0 * sc.chirp.symbol_duration;
  return cal;
}

}  // namespace bcss
