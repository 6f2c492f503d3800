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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hybridmap/numkit.hpp"
#include "hybridmap/semi_markov.hpp"

namespace hybridmap {

/// One simulated jump path: the initial state at time 0 followed by the
/// (strictly increasing) jump times and the states entered.
struct JumpRecord {
  std::vector<double> times;
  std::vector<std::size_t> states;  // states[0] is the initial state, size times + 1
};

struct TrajectoryBatch {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t initial_state = 0;
  TimeGrid grid{1.0, 1};
  std::vector<JumpRecord> records;
  /// occupation[n][k]: trajectories in state k at t_n. Each row sums to count.
  std::vector<std::vector<std::size_t>> occupation;
  /// Trajectories whose first jump happens after t_n.
  std::vector<std::size_t> first_jump_survivors;

  /// Empirical T_k,j0(t_n) = occupation / count and its binomial standard error.
  double frequency(std::size_t n, std::size_t k) const;
  double standard_error(std::size_t n, std::size_t k) const;
  /// Empirical probability that no jump has happened by t_n.
  double survival(std::size_t n) const;
  double survival_standard_error(std::size_t n) const;
};

/// Samples `count` semi-Markov paths started in `initial_state` on
/// [0, grid.t_max()]. Waiting times are drawn by inverse CDF of the column
/// cumulative; a uniform variate above the column mass means the path never
/// jumps again. The destination is drawn with probability q_ij(tau) / f_j(tau).
/// Path i uses its own generator seeded from (seed, i), so the result does not
/// depend on the execution mode. Throws InvalidArgument for a rejected kernel.
TrajectoryBatch sample_semi_markov(const JumpKernel& q, std::size_t initial_state,
                                   const TimeGrid& grid, std::size_t count, std::uint64_t seed,
                                   Execution exec = Execution::parallel);

struct DephasingAverage {
  TimeGrid grid{1.0, 1};
  std::vector<Complex> mean;     // mu_hat(t_n)
  std::vector<double> se_real;   // standard error of Re mu_hat
  std::vector<double> se_imag;   // standard error of Im mu_hat
  /// Least-squares rate of -ln|mu_hat| = rate * t through the origin over
  /// nodes where |mu_hat| exceeds three standard errors.
  double fitted_rate = 0.0;
  std::size_t fitted_nodes = 0;
};

/// Averages exp(-i int_0^t (xi_k - xi_l)) over `count` realizations of
/// independent white noises with <xi_k(t) xi_k(s)> = gamma_k delta(t - s),
/// discretized as Gaussian increments of variance gamma h per step.
DephasingAverage average_dephasing_noise(double gamma_k, double gamma_l, const TimeGrid& grid,
                                         std::size_t count, std::uint64_t seed,
                                         Execution exec = Execution::parallel);

}  // namespace hybridmap
