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

#include "hybridmap/cp_restore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridmap/errors.hpp"
#include "hybridmap/kernels.hpp"

namespace hybridmap {

namespace {

using Index = Eigen::Index;

// min over nodes of min-eig C(t_n) with an extra exp(-rate t) on every
// coherence, reusing a trajectory computed without the extra dephasing.
double damped_margin(const MapTrajectory& base, const std::vector<ComplexMatrix>& witness,
                     double rate, Execution exec) {
  std::vector<ComplexMatrix> damped = witness;
  for (std::size_t n = 0; n < damped.size(); ++n) {
    const double factor = std::exp(-rate * base.grid.node(n));
    const Eigen::VectorXcd diag = damped[n].diagonal();
    damped[n] *= factor;
    damped[n].diagonal() = diag;
  }
  const auto eig = kernels::min_eig_sweep(damped, exec);
  return *std::min_element(eig.begin(), eig.end());
}

double simulated_margin(const HybridGeneratorSpec& spec, const TimeGrid& grid, double rate,
                        const RestorationOptions& options) {
  HybridGeneratorSpec dephased = spec;
  dephased.decoherence = spec.decoherence.with_uniform_dephasing(rate);
  const auto traj = build_trajectory(dephased, grid, options.trajectory);
  WitnessOptions wopts;
  wopts.execution = options.execution;
  wopts.tolerance = options.feasibility;
  return cp_witness(traj, wopts).global_min;
}

[[noreturn]] void certificate_failure(const char* what, double rate, double margin) {
  std::ostringstream msg;
  msg << "minimal_uniform_dephasing: certificate failed (" << what << " at gamma_z = " << rate
      << ", min-eig C = " << margin << ")";
  throw NumericalError(msg.str());
}

}  // namespace

RestorationResult minimal_uniform_dephasing(const HybridGeneratorSpec& spec, const TimeGrid& grid,
                                            const RestorationOptions& options) {
  if (!(options.tolerance > 0.0) || !(options.max_rate > 0.0)) {
    throw InvalidArgument("minimal_uniform_dephasing: tolerance and max_rate must be positive");
  }
  const auto base = build_trajectory(spec, grid, options.trajectory);
  std::vector<ComplexMatrix> witness;
  witness.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) witness.push_back(witness_matrix(base, n));
  auto feasible = [&](double rate) {
    return damped_margin(base, witness, rate, options.execution) >= -options.feasibility;
  };

  RestorationResult result;
  double low = 0.0, high = options.max_rate;
  if (feasible(0.0)) {
    high = 0.0;
  } else {
    if (!feasible(high)) {
      std::ostringstream msg;
      msg << "minimal_uniform_dephasing: dephasing rate " << high
          << " does not restore complete positivity; retry with a larger max_rate";
      throw NumericalError(msg.str());
    }
    while (high - low > options.tolerance) {
      const double mid = 0.5 * (low + high);
      (feasible(mid) ? high : low) = mid;
      ++result.iterations;
    }
  }
  result.rate = high;
  result.bracket_low = low;
  result.bracket_high = high;

  // Certificate from fresh simulations rather than the bisection state.
  const double tol = options.tolerance;
  result.margin_at_rate = simulated_margin(spec, grid, result.rate, options);
  if (result.margin_at_rate < -options.feasibility) {
    certificate_failure("not CP at the result", result.rate, result.margin_at_rate);
  }
  result.margin_above = simulated_margin(spec, grid, result.rate + tol, options);
  if (result.margin_above < -options.feasibility) {
    certificate_failure("not CP above the result", result.rate + tol, result.margin_above);
  }
  if (result.rate > 0.0) {
    const double below = std::max(0.0, result.rate - 10.0 * tol);
    result.margin_below = simulated_margin(spec, grid, below, options);
    if (result.margin_below >= -options.feasibility) {
      certificate_failure("still CP below the result", below, result.margin_below);
    }
  }
  result.refined_margin = simulated_margin(spec, grid.refined(2), result.rate + tol, options);
  if (result.refined_margin < -options.feasibility) {
    certificate_failure("inter-node violation on the refined grid", result.rate + tol,
                        result.refined_margin);
  }

  if (options.monotonicity_sweep || spec.dimension() > 2) {
    constexpr int kProbes = 16;
    for (int i = 0; i < kProbes; ++i) {
      const double above =
          result.rate + tol + (options.max_rate - result.rate - tol) * i / (kProbes - 1);
      if (above <= options.max_rate && !feasible(above)) {
        certificate_failure("feasibility not monotone above the result", above, 0.0);
      }
      if (result.bracket_low > 0.0) {
        const double below = result.bracket_low * i / (kProbes - 1);
        if (feasible(below)) certificate_failure("feasibility not monotone below the result", below, 0.0);
      }
    }
    result.monotone_checked = true;
  }
  return result;
}

CoherenceSchedule max_coherence_schedule(const std::vector<RealMatrix>& populations,
                                         const std::vector<RealMatrix>& coherences,
                                         const TimeGrid& grid) {
  const std::size_t nodes = grid.size();
  if (populations.size() != nodes || coherences.size() != nodes) {
    throw InvalidArgument("max_coherence_schedule: trajectories must cover the grid");
  }
  const auto d = static_cast<std::size_t>(populations.front().rows());
  const double h = grid.step();

  CoherenceSchedule s;
  const RealMatrix zero = RealMatrix::Zero(static_cast<Index>(d), static_cast<Index>(d));
  const ComplexMatrix ones = ComplexMatrix::Ones(static_cast<Index>(d), static_cast<Index>(d));
  s.rates.assign(nodes, zero);
  s.unclamped_rates.assign(nodes, zero);
  s.factors.assign(nodes, ones);
  s.unclamped_factors.assign(nodes, ones);

  for (std::size_t n = 0; n < nodes; ++n) {
    for (std::size_t k = 0; k < d; ++k) {
      const double tkk = populations[n](static_cast<Index>(k), static_cast<Index>(k));
      if (!(tkk > 0.0)) {
        std::ostringstream msg;
        msg << "max_coherence_schedule: T_" << k << k << " reaches " << tkk << " at t = "
            << grid.node(n) << "; the schedule is singular";
        throw InvalidArgument(msg.str());
      }
    }
  }

  std::vector<double> log_ratio(nodes), rate(nodes);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k + 1; l < d; ++l) {
      const auto ik = static_cast<Index>(k), il = static_cast<Index>(l);
      for (std::size_t n = 0; n < nodes; ++n) {
        const double lam = std::abs(coherences[n](ik, il));
        if (!(lam > 0.0)) {
          std::ostringstream msg;
          msg << "max_coherence_schedule: coherence factor (" << k << ',' << l
              << ") vanishes at t = " << grid.node(n);
          throw NumericalError(msg.str());
        }
        log_ratio[n] = std::log(lam) - 0.5 * (std::log(populations[n](ik, ik)) +
                                              std::log(populations[n](il, il)));
      }
      // Second-order differences; one-sided at the ends.
      if (nodes >= 3) {
        rate[0] = (-3.0 * log_ratio[0] + 4.0 * log_ratio[1] - log_ratio[2]) / (2.0 * h);
        for (std::size_t n = 1; n + 1 < nodes; ++n) {
          rate[n] = (log_ratio[n + 1] - log_ratio[n - 1]) / (2.0 * h);
        }
        rate[nodes - 1] = (3.0 * log_ratio[nodes - 1] - 4.0 * log_ratio[nodes - 2] +
                           log_ratio[nodes - 3]) / (2.0 * h);
      } else {
        rate[0] = rate[1] = (log_ratio[1] - log_ratio[0]) / h;
      }

      // The unclamped integral is known exactly at the nodes. The clamped one
      // accumulates only the nondecreasing steps of the log ratio, so the
      // clamped factor is monotone and never exceeds the saturating one.
      double clamped_integral = 0.0;
      for (std::size_t n = 0; n < nodes; ++n) {
        if (n > 0) clamped_integral += std::max(log_ratio[n] - log_ratio[n - 1], 0.0);
        const double integral = log_ratio[n] - log_ratio[0];
        if (rate[n] < 0.0) s.clamp_events.push_back({n, k, l, rate[n]});
        s.unclamped_rates[n](ik, il) = s.unclamped_rates[n](il, ik) = rate[n];
        s.rates[n](ik, il) = s.rates[n](il, ik) = std::max(rate[n], 0.0);
        const double mu_sat = std::exp(-integral);
        const double mu = std::exp(-clamped_integral);
        s.unclamped_factors[n](ik, il) = s.unclamped_factors[n](il, ik) = mu_sat;
        s.factors[n](ik, il) = s.factors[n](il, ik) = mu;
      }
    }
  }
  return s;
}

}  // namespace hybridmap
