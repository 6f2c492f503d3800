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

#include <cmath>

#include "hybridmap/errors.hpp"
#include "hybridmap/qubit_ref.hpp"
#include "hybridmap/sampler.hpp"

using namespace hybridmap;
using Catch::Matchers::WithinAbs;

namespace {

constexpr std::uint64_t kSeed = 20260101;

JumpKernel single_channel() {
  RealMatrix kappa(2, 2), gamma = RealMatrix::Constant(2, 2, 2.0);
  kappa << 0.0, 0.0, 0.8, 0.0;  // 0 -> 1 only, total probability 0.4
  return JumpKernel::exponential(kappa, gamma);
}

JumpKernel reference_kernel() {
  return std::get<JumpKernel>(qubit_semi_markov_spec(fig1_params()).dissipation);
}

double sup_se(const TrajectoryBatch& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < b.grid.size(); ++n) s = std::max(s, b.standard_error(n, 0));
  return s;
}

}  // namespace

TEST_CASE("without jumps every path stays put", "[sampler]") {
  const auto q = JumpKernel::exponential(RealMatrix::Zero(3, 3), RealMatrix::Ones(3, 3));
  const auto b = sample_semi_markov(q, 2, TimeGrid(1.0, 10), 100, kSeed);
  for (std::size_t n = 0; n < b.grid.size(); ++n) {
    CHECK(b.frequency(n, 2) == 1.0);
    CHECK(b.frequency(n, 0) == 0.0);
    CHECK(b.survival(n) == 1.0);
  }
}

TEST_CASE("single-channel survival within three standard errors", "[sampler]") {
  const auto q = single_channel();
  const TimeGrid grid(3.0, 60);
  const std::size_t count = 20000;
  const auto b = sample_semi_markov(q, 0, grid, count, kSeed);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double t = grid.node(n);
    const double g = 1.0 - 0.8 * (1.0 - std::exp(-2.0 * t)) / 2.0;
    const double se = std::sqrt(g * (1.0 - g) / static_cast<double>(count));
    CHECK(std::abs(b.survival(n) - g) <= 3.0 * se + 1e-15);
    // A single jump ends in the absorbing state 1.
    CHECK_THAT(b.frequency(n, 1), WithinAbs(1.0 - b.survival(n), 1e-15));
  }
}

TEST_CASE("paths are well formed and occupations are complete", "[sampler]") {
  const auto b = sample_semi_markov(reference_kernel(), 1, TimeGrid(5.0, 100), 2000, kSeed);
  for (const auto& rec : b.records) {
    REQUIRE(rec.states.size() == rec.times.size() + 1);
    CHECK(rec.states.front() == 1);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
      CHECK(rec.times[i] > (i == 0 ? 0.0 : rec.times[i - 1]));
      CHECK(rec.times[i] <= 5.0);
      CHECK(rec.states[i + 1] < 2);
      CHECK(rec.states[i + 1] != rec.states[i]);
    }
  }
  for (const auto& row : b.occupation) CHECK(row[0] + row[1] == 2000);
}

TEST_CASE("sampling is reproducible and independent of execution", "[sampler]") {
  const auto q = reference_kernel();
  const TimeGrid grid(5.0, 50);
  const auto a = sample_semi_markov(q, 0, grid, 3000, kSeed, Execution::parallel);
  const auto b = sample_semi_markov(q, 0, grid, 3000, kSeed, Execution::serial);
  const auto c = sample_semi_markov(q, 0, grid, 3000, kSeed + 1);
  bool differs = false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].times == b.records[i].times);
    CHECK(a.records[i].states == b.records[i].states);
    differs = differs || a.records[i].times != c.records[i].times;
  }
  CHECK(a.occupation == b.occupation);
  CHECK(differs);
}

TEST_CASE("empirical populations approach the renewal series", "[sampler]") {
  const auto q = reference_kernel();
  const TimeGrid grid(5.0, 100);
  const auto series = build_T_series(q, TimeGrid(5.0, 5000)).transition;
  const auto b = sample_semi_markov(q, 0, grid, 20000, kSeed);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    CHECK(std::abs(b.frequency(n, 0) - series[50 * n](0, 0)) < 0.02);
  }
}

TEST_CASE("doubling the paths shrinks the error by sqrt 2", "[sampler]") {
  const auto q = reference_kernel();
  const TimeGrid grid(5.0, 50);
  const double s1 = sup_se(sample_semi_markov(q, 0, grid, 10000, kSeed));
  const double s2 = sup_se(sample_semi_markov(q, 0, grid, 20000, kSeed));
  CHECK_THAT(s1 / s2, WithinAbs(std::sqrt(2.0), 0.2 * std::sqrt(2.0)));
}

TEST_CASE("rejected kernels cannot be sampled", "[sampler]") {
  RealMatrix kappa(2, 2);
  kappa << 0.0, 0.0, 3.0, 0.0;
  const auto q = JumpKernel::exponential(kappa, RealMatrix::Ones(2, 2));
  CHECK_THROWS_AS(sample_semi_markov(q, 0, TimeGrid(1.0, 10), 10, kSeed), InvalidArgument);
  CHECK_THROWS_AS(sample_semi_markov(single_channel(), 5, TimeGrid(1.0, 10), 10, kSeed),
                  InvalidArgument);
}

TEST_CASE("noiseless dephasing average is exactly one", "[sampler]") {
  const auto avg = average_dephasing_noise(0.0, 0.0, TimeGrid(1.0, 20), 100, kSeed);
  for (const auto& m : avg.mean) CHECK(m == Complex(1.0, 0.0));
  CHECK(avg.fitted_rate == 0.0);
}

TEST_CASE("dephasing average decays at half the summed strengths", "[sampler]") {
  const TimeGrid grid(2.0, 200);
  const auto avg = average_dephasing_noise(0.5, 1.5, grid, 5000, kSeed);
  CHECK_THAT(avg.fitted_rate, WithinAbs(1.0, 0.1));
  for (std::size_t n : {100, 200}) {
    CHECK(std::abs(avg.mean[n].imag()) <= 3.0 * avg.se_imag[n]);
    CHECK_THAT(avg.mean[n].real(), WithinAbs(std::exp(-grid.node(n)), 3.0 * avg.se_real[n]));
  }
  const auto serial = average_dephasing_noise(0.5, 1.5, grid, 5000, kSeed, Execution::serial);
  CHECK(serial.mean == avg.mean);
  CHECK(serial.se_real == avg.se_real);
}
