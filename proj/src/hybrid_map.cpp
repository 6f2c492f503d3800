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

#include "hybridmap/hybrid_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hybridmap/errors.hpp"
#include "hybridmap/kernels.hpp"
#include "hybridmap/volterra.hpp"

namespace hybridmap {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Kolmogorov generator L_kl = W_kl - delta_kl sum_{i != l} W_il.
RealMatrix rate_generator(const RealMatrix& w) {
  RealMatrix g = w;
  g.diagonal().setZero();
  for (Index l = 0; l < g.cols(); ++l) g(l, l) = -g.col(l).sum();
  return g;
}

VolterraBackend resolve(VolterraBackend requested, const RateKernel& rates) {
  if (requested != VolterraBackend::automatic) return requested;
  return rates.is_expsum() ? VolterraBackend::expsum_embedding : VolterraBackend::quadrature;
}

Trajectory solve(const VolterraProblem& problem, const TimeGrid& grid, VolterraBackend backend) {
  return backend == VolterraBackend::expsum_embedding ? solve_expsum_embedding(problem, grid)
                                                      : solve_quadrature(problem, grid);
}

std::vector<KernelTerm> grouped_terms(const std::map<double, RealMatrix>& by_decay) {
  std::vector<KernelTerm> out;
  out.reserve(by_decay.size());
  for (const auto& [decay, amplitude] : by_decay) out.push_back({amplitude, decay});
  return out;
}

RateKernel dissipation_rates(const HybridGeneratorSpec& spec, const TimeGrid& grid) {
  if (const auto* rates = std::get_if<RateKernel>(&spec.dissipation)) return *rates;
  return rates_from_jump_kernel(std::get<JumpKernel>(spec.dissipation), grid);
}

std::vector<RealMatrix> rate_mode_populations(const RateKernel& rates, const TimeGrid& grid,
                                              VolterraBackend backend) {
  const std::size_t d = rates.dimension();
  VolterraProblem problem;
  problem.delta = rate_generator(rates.delta());
  problem.initial = RealMatrix::Identity(idx(d), idx(d));
  if (const auto* terms = rates.expsum()) {
    std::map<double, RealMatrix> by_decay;
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = 0; l < d; ++l) {
        for (const auto& term : (*terms)[k * d + l]) {
          auto [it, inserted] = by_decay.try_emplace(term.decay, RealMatrix::Zero(idx(d), idx(d)));
          it->second(idx(k), idx(l)) += term.amplitude;
          it->second(idx(l), idx(l)) -= term.amplitude;
        }
      }
    }
    problem.regular = grouped_terms(by_decay);
  } else {
    GriddedKernel gk{grid, {}};
    std::vector<std::vector<double>> samples(d * d);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = 0; l < d; ++l) samples[k * d + l] = rates.regular_samples(k, l, grid);
    }
    gk.samples.resize(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) {
      RealMatrix w(idx(d), idx(d));
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) w(idx(k), idx(l)) = samples[k * d + l][n];
      }
      gk.samples[n] = rate_generator(w);
    }
    problem.regular = std::move(gk);
  }
  return solve(problem, grid, backend);
}

}  // namespace

// ---------------------------------------------------------------------------
// DecoherenceModel

DecoherenceModel::DecoherenceModel(Kind kind, ComplexMatrix exponent)
    : kind_(kind), exponent_(std::move(exponent)) {
  exponent_.diagonal().setZero();
}

DecoherenceModel DecoherenceModel::gkls(ComplexMatrix d) {
  const HermitianMatrix hd(std::move(d));
  const double lowest = hermitian_min_eig(hd);
  if (lowest < -1e-10) {
    std::ostringstream msg;
    msg << "GKLS decoherence matrix is not positive semidefinite (min eigenvalue " << lowest << ")";
    throw InvalidArgument(msg.str());
  }
  const auto& m = hd.matrix();
  ComplexMatrix a(m.rows(), m.cols());
  for (Index k = 0; k < m.rows(); ++k) {
    for (Index l = 0; l < m.cols(); ++l) a(k, l) = 0.5 * (m(k, k) + m(l, l)) - m(k, l);
  }
  return DecoherenceModel(Kind::gkls, std::move(a));
}

DecoherenceModel DecoherenceModel::noise(std::vector<double> rates) {
  if (rates.empty()) throw InvalidArgument("noise decoherence model needs at least one rate");
  for (double g : rates) {
    if (!std::isfinite(g) || g < 0.0) {
      throw InvalidArgument("noise decoherence rates must be finite and nonnegative");
    }
  }
  const auto d = idx(rates.size());
  ComplexMatrix a(d, d);
  for (Index k = 0; k < d; ++k) {
    for (Index l = 0; l < d; ++l) {
      a(k, l) = 0.5 * (rates[static_cast<std::size_t>(k)] + rates[static_cast<std::size_t>(l)]);
    }
  }
  return DecoherenceModel(Kind::noise, std::move(a));
}

DecoherenceModel DecoherenceModel::direct(RealMatrix rates) {
  if (rates.rows() != rates.cols() || rates.rows() == 0 || !rates.allFinite()) {
    throw InvalidArgument("direct dephasing rates must be a finite non-empty square matrix");
  }
  for (Index k = 0; k < rates.rows(); ++k) {
    for (Index l = 0; l < rates.cols(); ++l) {
      if (k == l) continue;
      if (rates(k, l) < 0.0) throw InvalidArgument("direct dephasing rates must be nonnegative");
      if (rates(k, l) != rates(l, k)) throw InvalidArgument("direct dephasing rates must be symmetric");
    }
  }
  return DecoherenceModel(Kind::direct, rates.cast<Complex>());
}

DecoherenceModel DecoherenceModel::none(std::size_t dimension) {
  return direct(RealMatrix::Zero(idx(dimension), idx(dimension)));
}

DecoherenceModel DecoherenceModel::with_uniform_dephasing(double rate) const {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw InvalidArgument("uniform dephasing rate must be finite and nonnegative");
  }
  DecoherenceModel copy = *this;
  copy.uniform_ += rate;
  return copy;
}

ComplexMatrix DecoherenceModel::exponent() const {
  ComplexMatrix a = exponent_;
  if (uniform_ != 0.0) {
    a.array() += uniform_;
    a.diagonal().setZero();
  }
  return a;
}

std::vector<ComplexMatrix> decoherence_factors(const DecoherenceModel& model,
                                               const TimeGrid& grid) {
  const ComplexMatrix a = model.exponent();
  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double t = grid.node(n);
    ComplexMatrix mu = (-t * a).array().exp().matrix();
    mu.diagonal().setOnes();
    out.push_back(std::move(mu));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spec and trajectories

void HybridGeneratorSpec::check() const {
  const std::size_t d = dimension();
  if (d < 2) throw InvalidArgument("hybrid generator needs at least two levels");
  for (double e : energies) {
    if (!std::isfinite(e)) throw InvalidArgument("energies must be finite");
  }
  const std::size_t dd = std::visit([](const auto& k) { return k.dimension(); }, dissipation);
  if (dd != d) throw InvalidArgument("dissipation kernel dimension does not match the energies");
  if (decoherence.dimension() != d) {
    throw InvalidArgument("decoherence model dimension does not match the energies");
  }
}

Complex MapTrajectory::phase(std::size_t k, std::size_t l, std::size_t n) const {
  const double angle = -(energies[k] - energies[l]) * grid.node(n);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<RealMatrix> population_trajectory(const HybridGeneratorSpec& spec,
                                              const TimeGrid& grid,
                                              const TrajectoryOptions& options) {
  spec.check();
  if (const auto* q = std::get_if<JumpKernel>(&spec.dissipation)) {
    return build_T_series(*q, grid, options.series).transition;
  }
  const auto& rates = std::get<RateKernel>(spec.dissipation);
  return rate_mode_populations(rates, grid, resolve(options.backend, rates));
}

std::vector<RealMatrix> coherence_trajectory(const HybridGeneratorSpec& spec,
                                             const TimeGrid& grid,
                                             const TrajectoryOptions& options) {
  spec.check();
  const std::size_t d = spec.dimension();
  const RateKernel rates = dissipation_rates(spec, grid);
  const VolterraBackend backend = resolve(options.backend, rates);
  const Eigen::VectorXd w0 = rates.escape_delta();

  std::vector<RealMatrix> out(grid.size(), RealMatrix::Ones(idx(d), idx(d)));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k + 1; l < d; ++l) {
      VolterraProblem problem;
      problem.delta = RealMatrix::Constant(1, 1, -0.5 * (w0(idx(k)) + w0(idx(l))));
      problem.initial = RealMatrix::Ones(1, 1);
      if (rates.is_expsum()) {
        std::map<double, RealMatrix> by_decay;
        for (std::size_t s : {k, l}) {
          for (const auto& term : rates.escape_terms(s)) {
            auto [it, inserted] = by_decay.try_emplace(term.decay, RealMatrix::Zero(1, 1));
            it->second(0, 0) -= 0.5 * term.amplitude;
          }
        }
        problem.regular = grouped_terms(by_decay);
      } else {
        const auto wk = rates.escape_regular(k, grid);
        const auto wl = rates.escape_regular(l, grid);
        GriddedKernel gk{grid, std::vector<RealMatrix>(grid.size())};
        for (std::size_t n = 0; n < grid.size(); ++n) {
          gk.samples[n] = RealMatrix::Constant(1, 1, -0.5 * (wk[n] + wl[n]));
        }
        problem.regular = std::move(gk);
      }
      const auto lambda = solve(problem, grid, backend);
      for (std::size_t n = 0; n < grid.size(); ++n) {
        out[n](idx(k), idx(l)) = lambda[n](0, 0);
        out[n](idx(l), idx(k)) = lambda[n](0, 0);
      }
    }
  }
  return out;
}

MapTrajectory build_trajectory(const HybridGeneratorSpec& spec, const TimeGrid& grid,
                               const TrajectoryOptions& options) {
  spec.check();
  return MapTrajectory{grid, spec.energies, population_trajectory(spec, grid, options),
                       coherence_trajectory(spec, grid, options),
                       decoherence_factors(spec.decoherence, grid)};
}

// ---------------------------------------------------------------------------
// Map action

void check_density_matrix(const ComplexMatrix& rho, std::size_t dimension) {
  if (rho.rows() != idx(dimension) || rho.cols() != idx(dimension)) {
    throw InvalidArgument("density matrix has the wrong dimension");
  }
  const double herm = HermitianMatrix::hermiticity_error(rho);
  if (!(herm <= 1e-10)) throw InvalidArgument("density matrix is not Hermitian");
  const Complex trace = rho.trace();
  if (!(std::abs(trace - Complex(1.0, 0.0)) <= 1e-10)) {
    throw InvalidArgument("density matrix must have unit trace");
  }
  const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
  if (hermitian_min_eig(HermitianMatrix(sym)) < -1e-10) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
}

ComplexMatrix apply_unitary(const MapTrajectory& traj, const ComplexMatrix& rho, std::size_t n) {
  ComplexMatrix out = rho;
  for (std::size_t k = 0; k < traj.dimension(); ++k) {
    for (std::size_t l = 0; l < traj.dimension(); ++l) {
      if (k != l) out(idx(k), idx(l)) *= traj.phase(k, l, n);
    }
  }
  return out;
}

ComplexMatrix apply_dissipation(const MapTrajectory& traj, const ComplexMatrix& rho,
                                std::size_t n) {
  const auto& t = traj.populations[n];
  const auto& lambda = traj.coherences[n];
  ComplexMatrix out = rho;
  const Eigen::VectorXcd populations = t.cast<Complex>() * rho.diagonal();
  for (Index k = 0; k < rho.rows(); ++k) {
    for (Index l = 0; l < rho.cols(); ++l) {
      if (k != l) out(k, l) *= lambda(k, l);
    }
  }
  out.diagonal() = populations;
  return out;
}

ComplexMatrix apply_decoherence(const MapTrajectory& traj, const ComplexMatrix& rho,
                                std::size_t n) {
  const auto& mu = traj.decoherence[n];
  ComplexMatrix out = rho;
  for (Index k = 0; k < rho.rows(); ++k) {
    for (Index l = 0; l < rho.cols(); ++l) {
      if (k != l) out(k, l) *= mu(k, l);
    }
  }
  return out;
}

ComplexMatrix assemble_and_apply(const MapTrajectory& traj, const ComplexMatrix& rho0,
                                 std::size_t n) {
  check_density_matrix(rho0, traj.dimension());
  if (n >= traj.grid.size()) throw InvalidArgument("assemble_and_apply: node index out of range");
  return apply_unitary(traj, apply_dissipation(traj, apply_decoherence(traj, rho0, n), n), n);
}

// ---------------------------------------------------------------------------
// CP witness

ComplexMatrix witness_matrix(const MapTrajectory& traj, std::size_t n, bool with_phases) {
  const std::size_t d = traj.dimension();
  ComplexMatrix c(idx(d), idx(d));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      if (k == l) {
        c(idx(k), idx(k)) = traj.populations[n](idx(k), idx(k));
        continue;
      }
      Complex v = traj.coherences[n](idx(k), idx(l)) * traj.decoherence[n](idx(k), idx(l));
      if (with_phases) v *= traj.phase(k, l, n);
      c(idx(k), idx(l)) = v;
    }
  }
  return c;
}

ComplexMatrix choi_matrix(const MapTrajectory& traj, std::size_t n) {
  const std::size_t d = traj.dimension();
  ComplexMatrix choi = ComplexMatrix::Zero(idx(d * d), idx(d * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      choi(idx(i * d + k), idx(i * d + k)) = traj.populations[n](idx(k), idx(i));
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      choi(idx(i * d + i), idx(j * d + j)) = traj.coherences[n](idx(i), idx(j)) *
                                            traj.decoherence[n](idx(i), idx(j)) *
                                            traj.phase(i, j, n);
    }
  }
  return choi;
}

double qubit_witness_determinant(const MapTrajectory& traj, std::size_t n) {
  if (traj.dimension() != 2) throw InvalidArgument("qubit_witness_determinant needs d = 2");
  const auto& t = traj.populations[n];
  const double c01 = std::abs(traj.coherences[n](0, 1) * traj.decoherence[n](0, 1));
  return t(0, 0) * t(1, 1) - c01 * c01;
}

bool CPWitness::completely_positive() const {
  if (global_min < -tolerance) return false;
  return std::all_of(min_offdiag_populations.begin(), min_offdiag_populations.end(),
                     [this](double v) { return v >= -tolerance; });
}

CPWitness cp_witness(const MapTrajectory& traj, const WitnessOptions& options) {
  const std::size_t nodes = traj.grid.size();
  const std::size_t d = traj.dimension();
  CPWitness w;
  w.tolerance = options.tolerance;
  w.matrices.reserve(nodes);
  w.min_offdiag_populations.resize(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    w.matrices.push_back(witness_matrix(traj, n));
    const auto& t = traj.populations[n];
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = 0; l < d; ++l) {
        if (k != l) lowest = std::min(lowest, t(idx(k), idx(l)));
      }
    }
    w.min_offdiag_populations[n] = lowest;
    if (t.minCoeff() < -options.tolerance) w.negative_population_nodes.push_back(n);
  }
  w.min_eigenvalues = kernels::min_eig_sweep(w.matrices, options.execution);
  const auto lowest = std::min_element(w.min_eigenvalues.begin(), w.min_eigenvalues.end());
  w.global_min = *lowest;
  w.argmin = static_cast<std::size_t>(lowest - w.min_eigenvalues.begin());

  if (options.check_choi) {
    std::vector<ComplexMatrix> chois;
    chois.reserve(nodes);
    for (std::size_t n = 0; n < nodes; ++n) chois.push_back(choi_matrix(traj, n));
    w.choi_min_eigenvalues = kernels::min_eig_sweep(chois, options.execution);
    for (std::size_t n = 0; n < nodes; ++n) {
      const double expected = std::min(w.min_eigenvalues[n], w.min_offdiag_populations[n]);
      const double gap = std::abs(w.choi_min_eigenvalues[n] - expected);
      if (!(gap <= options.consistency_tolerance)) {
        std::ostringstream msg;
        msg << "cp_witness: Choi matrix and C witness disagree at t = " << traj.grid.node(n)
            << " (Choi min-eig " << w.choi_min_eigenvalues[n] << ", expected " << expected << ")";
        throw NumericalError(msg.str());
      }
    }
  }
  return w;
}

}  // namespace hybridmap
