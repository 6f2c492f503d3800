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

#include <catch_amalgamated.hpp>

#include <omp.h>

#include <cmath>
#include <random>

#include "hybridmap/hybrid_map.hpp"
#include "hybridmap/kernels.hpp"
#include "hybridmap/qubit_ref.hpp"
#include "hybridmap/sampler.hpp"

using namespace hybridmap;

namespace {

struct ManyThreads {
  ManyThreads() { omp_set_num_threads(4); }
};
const ManyThreads kThreads;

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

}  // namespace

TEST_CASE("parallel convolution is bitwise identical to the serial one", "[parallel]") {
  const auto f = noise(3001, 1), g = noise(3001, 2);
  std::vector<double> a(3001), b(3001);
  kernels::trapezoid_convolve_serial(f, g, 1e-3, 0.7, a);
  kernels::trapezoid_convolve_omp(f, g, 1e-3, 0.7, b);
  CHECK(a == b);
  auto c = noise(3001, 3), d = c;
  kernels::trapezoid_convolve_add_serial(f, g, 1e-3, c);
  kernels::trapezoid_convolve_add_omp(f, g, 1e-3, d);
  CHECK(c == d);
}

TEST_CASE("parallel eigenvalue sweep is bitwise identical", "[parallel]") {
  std::vector<ComplexMatrix> mats;
  for (unsigned s = 0; s < 200; ++s) {
    const auto v = noise(18, s);
    ComplexMatrix m(3, 3);
    for (Eigen::Index i = 0; i < 9; ++i) {
      m(i / 3, i % 3) = Complex(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i) + 9]);
    }
    mats.push_back(m + m.adjoint());
  }
  CHECK(kernels::min_eig_sweep_serial(mats) == kernels::min_eig_sweep_omp(mats));
}

TEST_CASE("series and witness do not depend on the execution mode", "[parallel]") {
  const auto spec = qubit_semi_markov_spec(fig1_params(0.2));
  const auto& q = std::get<JumpKernel>(spec.dissipation);
  const TimeGrid grid(5.0, 1500);
  SeriesOptions serial, parallel;
  serial.execution = Execution::serial;
  parallel.execution = Execution::parallel;
  const auto a = build_T_series(q, grid, serial);
  const auto b = build_T_series(q, grid, parallel);
  REQUIRE(a.terms == b.terms);
  for (std::size_t n = 0; n < grid.size(); ++n) CHECK(a.transition[n] == b.transition[n]);

  const auto traj = build_trajectory(spec, grid);
  WitnessOptions ws, wp;
  ws.execution = Execution::serial;
  wp.execution = Execution::parallel;
  const auto w1 = cp_witness(traj, ws), w2 = cp_witness(traj, wp);
  CHECK(w1.min_eigenvalues == w2.min_eigenvalues);
  CHECK(w1.choi_min_eigenvalues == w2.choi_min_eigenvalues);
}

TEST_CASE("Monte Carlo results do not depend on the thread count", "[parallel]") {
  const auto q = std::get<JumpKernel>(qubit_semi_markov_spec(fig1_params()).dissipation);
  const TimeGrid grid(5.0, 50);
  const auto a = sample_semi_markov(q, 1, grid, 4000, 99, Execution::parallel);
  omp_set_num_threads(3);
  const auto b = sample_semi_markov(q, 1, grid, 4000, 99, Execution::parallel);
  const auto n1 = average_dephasing_noise(1.0, 0.5, grid, 3000, 99, Execution::parallel);
  omp_set_num_threads(4);
  const auto n2 = average_dephasing_noise(1.0, 0.5, grid, 3000, 99, Execution::parallel);
  CHECK(a.occupation == b.occupation);
  CHECK(n1.mean == n2.mean);
}
