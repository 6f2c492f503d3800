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

#include "hybridmap/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "hybridmap/errors.hpp"

namespace hybridmap {

namespace {

// Independent generator per (seed, stream) pair: parallel runs draw exactly
// the same numbers as serial ones.
std::mt19937_64 stream_generator(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Uniform on the open interval (0, 1).
double open_uniform(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
}

double binomial_se(std::size_t hits, std::size_t count) {
  const double p = static_cast<double>(hits) / static_cast<double>(count);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

JumpRecord sample_path(const JumpKernel& q, std::size_t start, double horizon,
                       std::mt19937_64& gen) {
  const std::size_t d = q.dimension();
  JumpRecord rec;
  rec.states.push_back(start);
  double now = 0.0;
  std::size_t state = start;
  std::vector<double> weights(d);
  for (;;) {
    const double u = open_uniform(gen);
    if (u >= q.column_mass(state)) break;  // never leaves again
    const double remaining = horizon - now;
    auto excess = [&](double tau) { return q.column_cumulative(state, tau) - u; };
    const double at_horizon = excess(remaining);
    if (at_horizon < 0.0) break;  // next jump falls beyond the horizon
    double tau = remaining;
    if (at_horizon > 0.0) {
      std::uintmax_t iterations = 200;
      const double tol = 1e-10 * horizon;
      const auto bracket = boost::math::tools::toms748_solve(
          excess, 0.0, remaining, -u, at_horizon,
          [tol](double a, double b) { return b - a <= tol; }, iterations);
      tau = 0.5 * (bracket.first + bracket.second);
    }
    double next = now + tau;
    if (next <= now) next = std::nextafter(now, std::numeric_limits<double>::infinity());

    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      weights[i] = i == state ? 0.0 : q.density(i, state, tau);
      total += weights[i];
    }
    if (!(total > 0.0)) {
      std::ostringstream msg;
      msg << "sample_semi_markov: zero jump density out of state " << state << " at tau = " << tau;
      throw NumericalError(msg.str());
    }
    const double pick = open_uniform(gen) * total;
    std::size_t dest = d;
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (weights[i] == 0.0) continue;
      dest = i;
      acc += weights[i];
      if (pick < acc) break;
    }
    rec.times.push_back(next);
    rec.states.push_back(dest);
    now = next;
    state = dest;
  }
  return rec;
}

}  // namespace

double TrajectoryBatch::frequency(std::size_t n, std::size_t k) const {
  return static_cast<double>(occupation[n][k]) / static_cast<double>(count);
}

double TrajectoryBatch::standard_error(std::size_t n, std::size_t k) const {
  return binomial_se(occupation[n][k], count);
}

double TrajectoryBatch::survival(std::size_t n) const {
  return static_cast<double>(first_jump_survivors[n]) / static_cast<double>(count);
}

double TrajectoryBatch::survival_standard_error(std::size_t n) const {
  return binomial_se(first_jump_survivors[n], count);
}

TrajectoryBatch sample_semi_markov(const JumpKernel& q, std::size_t initial_state,
                                   const TimeGrid& grid, std::size_t count, std::uint64_t seed,
                                   Execution exec) {
  const std::size_t d = q.dimension();
  if (initial_state >= d) throw InvalidArgument("sample_semi_markov: initial state out of range");
  if (count == 0) throw InvalidArgument("sample_semi_markov: trajectory count must be positive");
  if (const auto report = validate_jump_kernel(q); !report.accepted) {
    throw InvalidArgument("sample_semi_markov: rejected kernel\n" + report.describe());
  }

  TrajectoryBatch batch;
  batch.seed = seed;
  batch.count = count;
  batch.initial_state = initial_state;
  batch.grid = grid;
  batch.records.resize(count);

  const double horizon = grid.t_max();
  auto run = [&](std::size_t i) {
    auto gen = stream_generator(seed, i);
    batch.records[i] = sample_path(q, initial_state, horizon, gen);
  };
  const auto total = static_cast<std::ptrdiff_t>(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t i = 0; i < total; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < total; ++i) run(static_cast<std::size_t>(i));
  }

  // Counting is exact integer arithmetic, so its order does not matter.
  const std::size_t nodes = grid.size();
  batch.occupation.assign(nodes, std::vector<std::size_t>(d, 0));
  batch.first_jump_survivors.assign(nodes, 0);
  for (const auto& rec : batch.records) {
    std::size_t jumps = 0;
    for (std::size_t n = 0; n < nodes; ++n) {
      const double t = grid.node(n);
      while (jumps < rec.times.size() && rec.times[jumps] <= t) ++jumps;
      ++batch.occupation[n][rec.states[jumps]];
      if (jumps == 0) ++batch.first_jump_survivors[n];
    }
  }
  return batch;
}

DephasingAverage average_dephasing_noise(double gamma_k, double gamma_l, const TimeGrid& grid,
                                         std::size_t count, std::uint64_t seed, Execution exec) {
  if (!(gamma_k >= 0.0) || !(gamma_l >= 0.0) || !std::isfinite(gamma_k) ||
      !std::isfinite(gamma_l)) {
    throw InvalidArgument("average_dephasing_noise: noise strengths must be finite and >= 0");
  }
  if (count < 2) throw InvalidArgument("average_dephasing_noise: need at least two realizations");

  // Realizations are summed in fixed blocks that are then reduced in order,
  // so the result does not depend on the thread count.
  constexpr std::size_t kBlock = 256;
  const std::size_t nodes = grid.size();
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> sums(blocks, std::vector<double>(4 * nodes, 0.0));
  const double sk = std::sqrt(gamma_k * grid.step());
  const double sl = std::sqrt(gamma_l * grid.step());

  auto run_block = [&](std::size_t b) {
    auto& s = sums[b];
    const std::size_t end = std::min(count, (b + 1) * kBlock);
    for (std::size_t r = b * kBlock; r < end; ++r) {
      auto gen = stream_generator(seed, r);
      std::normal_distribution<double> normal;
      double phase = 0.0;
      for (std::size_t n = 0; n < nodes; ++n) {
        if (n > 0) {
          const double xk = normal(gen);
          const double xl = normal(gen);
          phase += sk * xk - sl * xl;
        }
        const double re = std::cos(phase), im = -std::sin(phase);
        s[4 * n] += re;
        s[4 * n + 1] += im;
        s[4 * n + 2] += re * re;
        s[4 * n + 3] += im * im;
      }
    }
  };
  const auto total = static_cast<std::ptrdiff_t>(blocks);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < total; ++b) run_block(static_cast<std::size_t>(b));
  } else {
    for (std::ptrdiff_t b = 0; b < total; ++b) run_block(static_cast<std::size_t>(b));
  }

  DephasingAverage out;
  out.grid = grid;
  out.mean.resize(nodes);
  out.se_real.resize(nodes);
  out.se_imag.resize(nodes);
  const double N = static_cast<double>(count);
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < nodes; ++n) {
    double s1r = 0.0, s1i = 0.0, s2r = 0.0, s2i = 0.0;
    for (const auto& s : sums) {
      s1r += s[4 * n];
      s1i += s[4 * n + 1];
      s2r += s[4 * n + 2];
      s2i += s[4 * n + 3];
    }
    const double mr = s1r / N, mi = s1i / N;
    out.mean[n] = {mr, mi};
    out.se_real[n] = std::sqrt(std::max(0.0, (s2r - N * mr * mr) / (N - 1.0)) / N);
    out.se_imag[n] = std::sqrt(std::max(0.0, (s2i - N * mi * mi) / (N - 1.0)) / N);
    const double t = grid.node(n);
    const double mag = std::abs(out.mean[n]);
    const double se = std::hypot(out.se_real[n], out.se_imag[n]);
    if (t > 0.0 && mag > 3.0 * se && mag > 0.0) {
      num += -t * std::log(mag);
      den += t * t;
      ++out.fitted_nodes;
    }
  }
  out.fitted_rate = den > 0.0 ? num / den : 0.0;
  return out;
}

}  // namespace hybridmap
