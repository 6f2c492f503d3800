// Copyright 2026 The hybridmap Authors
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

// Serial reference vs OpenMP path for the parallel kernels.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <vector>

#include "hybridmap/kernels.hpp"
#include "hybridmap/qubit_ref.hpp"
#include "hybridmap/sampler.hpp"

using namespace hybridmap;

namespace {

std::vector<double> decaying(std::size_t n, double rate) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-rate * 1e-3 * static_cast<double>(i));
  return v;
}

template <bool Parallel>
void BM_Convolution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = decaying(n, 5.0), g = decaying(n, 1.0);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::trapezoid_convolve_omp(f, g, 1e-3, 0.0, out);
    } else {
      kernels::trapezoid_convolve_serial(f, g, 1e-3, 0.0, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <bool Parallel>
void BM_MinEigSweep(benchmark::State& state) {
  const TimeGrid grid(5.0, static_cast<std::size_t>(state.range(0)));
  const auto c = closed_forms(fig1_params(), grid);
  std::vector<ComplexMatrix> mats(grid.size(), ComplexMatrix(2, 2));
  for (std::size_t n = 0; n < grid.size(); ++n) {
    mats[n] << c.t00[n], c.lambda01[n], c.lambda01[n], c.t11[n];
  }
  for (auto _ : state) {
    auto v = Parallel ? kernels::min_eig_sweep_omp(mats) : kernels::min_eig_sweep_serial(mats);
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void BM_Sampler(benchmark::State& state) {
  const auto q = std::get<JumpKernel>(qubit_semi_markov_spec(fig1_params()).dissipation);
  const TimeGrid grid(5.0, 500);
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto b = sample_semi_markov(q, 0, grid, count, 20260101,
                                Parallel ? Execution::parallel : Execution::serial);
    benchmark::DoNotOptimize(b.occupation.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

}  // namespace

BENCHMARK(BM_Convolution<false>)->Name("convolution/serial")->RangeMultiplier(4)->Range(1 << 10, 1 << 14);
BENCHMARK(BM_Convolution<true>)->Name("convolution/omp")->RangeMultiplier(4)->Range(1 << 10, 1 << 14);
BENCHMARK(BM_MinEigSweep<false>)->Name("min_eig_sweep/serial")->Arg(5000)->Arg(50000);
BENCHMARK(BM_MinEigSweep<true>)->Name("min_eig_sweep/omp")->Arg(5000)->Arg(50000);
BENCHMARK(BM_Sampler<false>)->Name("sampler/serial")->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sampler<true>)->Name("sampler/omp")->Arg(10000)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
