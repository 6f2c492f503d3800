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
#include <variant>
#include <vector>

#include "hybridmap/numkit.hpp"
#include "hybridmap/semi_markov.hpp"

namespace hybridmap {

/// Pure-decoherence part of the generator. Every model reduces to a matrix
/// of complex exponents a_kl with mu_kl(t) = exp(-a_kl t) for k != l:
///   GKLS:   a_kl = (D_kk + D_ll) / 2 - D_kl
///   noise:  a_kl = (gamma_k + gamma_l) / 2   (Gaussian white noise on E_k)
///   direct: a_kl = Gamma_kl
/// An optional uniform dephasing rate is added to every off-diagonal exponent.
class DecoherenceModel {
 public:
  enum class Kind { gkls, noise, direct };

  /// D must be Hermitian and positive semidefinite within 1e-10.
  static DecoherenceModel gkls(ComplexMatrix d);
  static DecoherenceModel noise(std::vector<double> rates);
  /// Symmetric, nonnegative pairwise rates; the diagonal is ignored.
  static DecoherenceModel direct(RealMatrix rates);
  /// No decoherence on d levels.
  static DecoherenceModel none(std::size_t dimension);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return static_cast<std::size_t>(exponent_.rows()); }
  double uniform_dephasing() const { return uniform_; }
  /// Copy with `rate` added to the uniform dephasing (rate >= 0).
  DecoherenceModel with_uniform_dephasing(double rate) const;
  /// a_kl including the uniform part, zero diagonal.
  ComplexMatrix exponent() const;

 private:
  DecoherenceModel(Kind kind, ComplexMatrix exponent);

  Kind kind_;
  ComplexMatrix exponent_;
  double uniform_ = 0.0;
};

/// mu_kl(t_n) with unit diagonal.
std::vector<ComplexMatrix> decoherence_factors(const DecoherenceModel& model,
                                               const TimeGrid& grid);

/// Energies, dissipation and decoherence of a hybrid generator. The
/// dissipation is either a rate kernel W_kl(t) ("rates" mode) or a
/// semi-Markov matrix q_ij(t) ("semi-markov" mode).
struct HybridGeneratorSpec {
  std::vector<double> energies;
  std::variant<RateKernel, JumpKernel> dissipation;
  DecoherenceModel decoherence;

  std::size_t dimension() const { return energies.size(); }
  bool semi_markov_mode() const { return std::holds_alternative<JumpKernel>(dissipation); }
  /// d >= 2, finite energies, consistent dimensions.
  void check() const;
};

enum class VolterraBackend {
  automatic,         // embedding for exponential-sum kernels, quadrature otherwise
  quadrature,
  expsum_embedding,
};

struct TrajectoryOptions {
  VolterraBackend backend = VolterraBackend::automatic;
  SeriesOptions series;
};

/// Gridded ingredients of Lambda_t = U_t o Phi^diss_t o Phi^dec_t.
struct MapTrajectory {
  TimeGrid grid;
  std::vector<double> energies;
  std::vector<RealMatrix> populations;      // T(t_n)
  std::vector<RealMatrix> coherences;       // lambda(t_n), symmetric, unit diagonal
  std::vector<ComplexMatrix> decoherence;   // mu(t_n), unit diagonal

  std::size_t dimension() const { return energies.size(); }
  /// exp(-i (E_k - E_l) t_n).
  Complex phase(std::size_t k, std::size_t l, std::size_t n) const;
};

/// Columns of T(t_n). Rates mode solves the memory-kernel rate equation with
/// the Volterra solvers; semi-Markov mode sums the renewal series. Negative
/// entries are possible in rates mode and are not rejected.
std::vector<RealMatrix> population_trajectory(const HybridGeneratorSpec& spec,
                                              const TimeGrid& grid,
                                              const TrajectoryOptions& options = {});

/// lambda_kl(t_n) solving lambda' = -1/2 int (w_k + w_l)(t - s) lambda(s) ds.
std::vector<RealMatrix> coherence_trajectory(const HybridGeneratorSpec& spec,
                                             const TimeGrid& grid,
                                             const TrajectoryOptions& options = {});

MapTrajectory build_trajectory(const HybridGeneratorSpec& spec, const TimeGrid& grid,
                               const TrajectoryOptions& options = {});

/// Throws InvalidArgument unless rho is Hermitian, unit-trace and positive
/// semidefinite, each within 1e-10.
void check_density_matrix(const ComplexMatrix& rho, std::size_t dimension);

// The three commuting factors of the map at node n. Each acts element-wise
// in the energy basis.
ComplexMatrix apply_unitary(const MapTrajectory& traj, const ComplexMatrix& rho, std::size_t n);
ComplexMatrix apply_dissipation(const MapTrajectory& traj, const ComplexMatrix& rho,
                                std::size_t n);
ComplexMatrix apply_decoherence(const MapTrajectory& traj, const ComplexMatrix& rho,
                                std::size_t n);

/// rho(t_n) = U o Phi^diss o Phi^dec applied to a validated initial state.
ComplexMatrix assemble_and_apply(const MapTrajectory& traj, const ComplexMatrix& rho0,
                                 std::size_t n);

/// C(t_n): C_kk = T_kk, C_kl = lambda_kl mu_kl. With `with_phases` the
/// Hamiltonian phases are included (a unitary diagonal congruence of C).
ComplexMatrix witness_matrix(const MapTrajectory& traj, std::size_t n, bool with_phases = false);

/// Choi matrix sum_ij |i><j| (x) Lambda_t(|i><j|), index (i * d + k).
ComplexMatrix choi_matrix(const MapTrajectory& traj, std::size_t n);

/// det C for a qubit trajectory.
double qubit_witness_determinant(const MapTrajectory& traj, std::size_t n);

struct WitnessOptions {
  Execution execution = Execution::parallel;
  bool check_choi = true;
  double tolerance = 1e-10;
  double consistency_tolerance = 1e-8;
};

struct CPWitness {
  std::vector<ComplexMatrix> matrices;          // C(t_n), phases stripped
  std::vector<double> min_eigenvalues;          // of C(t_n)
  std::vector<double> choi_min_eigenvalues;     // empty unless check_choi
  std::vector<double> min_offdiag_populations;  // min_{k != l} T_kl(t_n)
  std::vector<std::size_t> negative_population_nodes;
  double global_min = 0.0;
  std::size_t argmin = 0;
  double tolerance = 1e-10;

  /// C(t) >= -tol at every node and every off-diagonal T_kl >= -tol.
  bool completely_positive() const;
};

/// Builds C(t_n) and its minimal eigenvalues. With check_choi, also builds the
/// full Choi matrix at each node and throws NumericalError when its minimal
/// eigenvalue differs from min(min-eig C, min_{k != l} T_kl) by more than the
/// consistency tolerance.
CPWitness cp_witness(const MapTrajectory& traj, const WitnessOptions& options = {});

}  // namespace hybridmap
