// Copyright 2026 The qdiv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qdiv/classical.hpp"
#include "qdiv/divergence.hpp"
#include "qdiv/matcore.hpp"
#include "qdiv/quantum.hpp"
#include "qdiv/renyi.hpp"

namespace {

using qdiv::mat::Mat;

void BM_EigHermitian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  qdiv::Rng rng(1);
  Mat g = qdiv::quantum::ginibre(d, d, rng);
  Mat h = (g + g.adjoint()) / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdiv::mat::eig_hermitian(h));
  }
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(16)->Arg(64);

void BM_SandwichedDivergence(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat rho = qdiv::quantum::random_density(d, d, 2).matrix();
  Mat sigma = qdiv::quantum::random_density(d, d, 3).matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdiv::div::srd(rho, sigma, 1.7));
  }
}
BENCHMARK(BM_SandwichedDivergence)->Arg(4)->Arg(8)->Arg(16);

void BM_HypothesisTesting(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat rho = qdiv::quantum::random_density(d, d, 4).matrix();
  Mat sigma = qdiv::quantum::random_density(d, d, 5).matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdiv::div::hypothesis_testing_re(rho, sigma, 0.2));
  }
}
BENCHMARK(BM_HypothesisTesting)->Arg(2)->Arg(4)->Arg(8);

void BM_IidTail(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qdiv::classical::ClassicalDistribution p({0.8, 0.2}, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdiv::classical::iid_tail(p, n, -0.75 * n));
  }
}
BENCHMARK(BM_IidTail)->Arg(100)->Arg(1000)->Arg(4000);

void BM_Pinch(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat rho = qdiv::quantum::random_density(d, d, 6).matrix();
  Mat sigma = qdiv::quantum::random_density(d, d, 7).matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdiv::mat::pinch(sigma, rho));
  }
}
BENCHMARK(BM_Pinch)->Arg(4)->Arg(16)->Arg(64);

void BM_ConditionalRenyi(benchmark::State& state) {
  Mat rho = qdiv::quantum::random_density(4, 4, 8).matrix();
  qdiv::renyi::OptimizerParams params;
  params.restarts = 1;
  params.max_iters = 120;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qdiv::renyi::conditional_renyi(rho, 2, 2, 2.0, params));
  }
}
BENCHMARK(BM_ConditionalRenyi);

}  // namespace

BENCHMARK_MAIN();
