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


#include <benchmark/benchmark.h>

#include <vector>

#include "bcss/ber.hpp"
#include "bcss/mc.hpp"
#include "bcss/specfun.hpp"
#include "bcss/xcorr.hpp"

namespace {

using namespace bcss;

void BM_MarcumQ1(benchmark::State& state) {
  double a = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::marcum_q1(a, 2.5));
    a = a < 6.0 ? a + 0.01 : 0.5;
  }
}
BENCHMARK(BM_MarcumQ1);

void BM_RicianPairError(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(specfun::rician_pair_error(4.2, 1.3, 1.0));
}
BENCHMARK(BM_RicianPairError);

void BM_AppendixClosed(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(specfun::appendix_integral_closed(1.3, 0.7, 0.9, 1.1));
}
BENCHMARK(BM_AppendixClosed);

void BM_AppendixQuad(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(specfun::appendix_integral_quad(1.3, 0.7, 0.9, 1.1));
}
BENCHMARK(BM_AppendixQuad);

void BM_RhoLinear(benchmark::State& state) {
  ChirpParams p;
  p.n_users = 10;
  for (auto _ : state) benchmark::DoNotOptimize(rho_linear(p, 0, 0, 3, 1, 2.5, 0.07));
}
BENCHMARK(BM_RhoLinear);

void BM_NcDerived(benchmark::State& state) {
  const Scenario sc = make_uniform_scenario(static_cast<int>(state.range(0)), 0.05);
  const BranchTable t = build_branch_correlations(sc);
  for (auto _ : state) benchmark::DoNotOptimize(ber_nc_nuser_derived(t, 10.0));
}
BENCHMARK(BM_NcDerived)->Arg(2)->Arg(8)->Arg(14);

void BM_McBlock(benchmark::State& state) {
  const Scenario sc = make_uniform_scenario(static_cast<int>(state.range(0)), 0.05);
  StopRule stop;
  stop.min_errors = 1'000'000;
  stop.max_bits = kTrialsPerBlock;
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_ber(sc, Detector::kNoncoherent, {4.0}, stop, seed++));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kTrialsPerBlock));
}
BENCHMARK(BM_McBlock)->Arg(1)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
