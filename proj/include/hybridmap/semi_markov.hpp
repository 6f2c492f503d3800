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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hybridmap/numkit.hpp"

namespace hybridmap {

/// q_ij(t) = kappa_ij exp(-gamma_ij t): density of a jump from j to i.
struct ExponentialJumpFamily {
  RealMatrix kappa;
  RealMatrix gamma;
};

/// q_ij sampled on a grid; samples[i * d + j][n] = q_ij(t_n).
struct TabulatedJumpFamily {
  TimeGrid grid;
  std::vector<std::vector<double>> samples;
};

/// Semi-Markov matrix q_ij(t). Column j holds the jump densities out of
/// state j; probability vectors are columns throughout the library.
///
/// Construction only checks shapes and finiteness. Nonnegativity and the
/// column-mass bound are checked by validate_jump_kernel.
class JumpKernel {
 public:
  static JumpKernel exponential(RealMatrix kappa, RealMatrix gamma);
  static JumpKernel tabulated(TimeGrid grid, std::size_t dimension,
                              std::vector<std::vector<double>> samples);

  std::size_t dimension() const { return dimension_; }
  bool is_exponential() const { return std::holds_alternative<ExponentialJumpFamily>(family_); }
  const ExponentialJumpFamily* exponential_family() const {
    return std::get_if<ExponentialJumpFamily>(&family_);
  }
  const TabulatedJumpFamily* tabulated_family() const {
    return std::get_if<TabulatedJumpFamily>(&family_);
  }

  /// q_ij(t). Tabulated kernels interpolate linearly and vanish beyond
  /// their grid.
  double density(std::size_t i, std::size_t j, double t) const;
  /// int_0^t q_ij.
  double cumulative(std::size_t i, std::size_t j, double t) const;
  /// int_0^t f_j, the probability of having left j by time t.
  double column_cumulative(std::size_t j, double t) const;
  /// int_0^inf f_j (tabulated: integral over the kernel's grid).
  double column_mass(std::size_t j) const;
  /// Whether q_ij is identically zero.
  bool is_zero(std::size_t i, std::size_t j) const;

  /// q_ij sampled on `grid`. A tabulated kernel can only be sampled on its
  /// own grid.
  std::vector<double> sample(std::size_t i, std::size_t j, const TimeGrid& grid) const;

  /// With exponential family, true when all nonzero entries of every column
  /// share one decay rate.
  bool has_common_column_decay() const;

 private:
  JumpKernel(std::size_t d, std::variant<ExponentialJumpFamily, TabulatedJumpFamily> family);

  std::size_t dimension_;
  std::variant<ExponentialJumpFamily, TabulatedJumpFamily> family_;
  // Tabulated: running trapezoid integrals of each q_ij on the kernel grid.
  std::vector<std::vector<double>> cumulative_samples_;
};

struct KernelViolation {
  std::optional<std::size_t> row;  // unset for whole-column conditions
  std::size_t column;
  std::optional<double> time;
  std::string reason;
};

struct JumpKernelReport {
  bool accepted = true;
  std::vector<KernelViolation> violations;

  /// Multi-line summary of the violations.
  std::string describe() const;
};

/// Checks q_ij >= 0, q_ii == 0, gamma_ij > 0 where kappa_ij != 0, and the
/// column-mass bound sum_i int_0^inf q_ij <= 1 (within 1e-12).
JumpKernelReport validate_jump_kernel(const JumpKernel& q);

/// Waiting-time density f_j = sum_i q_ij and survival g_j = 1 - int_0^t f_j
/// per column; waiting[j][n], survival[j][n].
struct WaitingTimes {
  std::vector<std::vector<double>> waiting;
  std::vector<std::vector<double>> survival;
};

WaitingTimes survival_and_waiting(const JumpKernel& q, const TimeGrid& grid);

struct SeriesOptions {
  double tolerance = 1e-12;
  std::size_t max_terms = 10000;
  Execution execution = Execution::parallel;
};

struct SeriesResult {
  std::vector<RealMatrix> transition;  // T(t_n)
  std::size_t terms = 0;
  double last_term_norm = 0.0;
};

/// Stochastic matrix T = n + n*q + n*q*q + ... with n_ij = g_j delta_ij,
/// evaluated with trapezoidal convolutions on the grid. Throws
/// InvalidArgument for a rejected kernel and NumericalError when the
/// series does not reach the tolerance within max_terms.
SeriesResult build_T_series(const JumpKernel& q, const TimeGrid& grid,
                            const SeriesOptions& options = {});

struct ExpTerm {
  double amplitude;
  double decay;
};

/// Rate kernel W_kl(t) = delta_kl_weight * delta(t) + regular_kl(t) for
/// k != l. The regular part is either a sum of exponentials per pair or
/// samples on a grid. Diagonal entries are ignored.
class RateKernel {
 public:
  using ExpSum = std::vector<std::vector<ExpTerm>>;  // index k * d + l

  struct Tabulated {
    TimeGrid grid;
    std::vector<std::vector<double>> samples;  // index k * d + l
  };

  /// Instantaneous part only: the Markovian limit.
  static RateKernel markov(RealMatrix rates);
  static RateKernel exponential(RealMatrix delta, ExpSum terms);
  static RateKernel tabulated(RealMatrix delta, TimeGrid grid,
                              std::vector<std::vector<double>> samples);

  std::size_t dimension() const { return static_cast<std::size_t>(delta_.rows()); }
  /// Instantaneous weights with a zeroed diagonal.
  const RealMatrix& delta() const { return delta_; }
  bool is_expsum() const { return std::holds_alternative<ExpSum>(regular_); }
  const ExpSum* expsum() const { return std::get_if<ExpSum>(&regular_); }
  const Tabulated* tabulated_part() const { return std::get_if<Tabulated>(&regular_); }
  bool has_regular_part() const;

  /// Regular part of W_kl on a grid; zero for k == l.
  std::vector<double> regular_samples(std::size_t k, std::size_t l, const TimeGrid& grid) const;

  /// Instantaneous escape rates w_k^0 = sum_{i != k} delta_ik.
  Eigen::VectorXd escape_delta() const;
  /// Regular part of w_k(t) = sum_{i != k} W_ik(t) on a grid.
  std::vector<double> escape_regular(std::size_t k, const TimeGrid& grid) const;
  /// Regular part of w_k as an exponential sum (expsum kernels only).
  std::vector<ExpTerm> escape_terms(std::size_t k) const;

 private:
  RateKernel(RealMatrix delta, std::variant<ExpSum, Tabulated> regular);

  RealMatrix delta_;
  std::variant<ExpSum, Tabulated> regular_;
};

/// Rates defined in the Laplace domain by W_ij = q_ij / g_j.
///
/// Exponential kernels with a common decay per column use the closed form
/// W_ij(t) = kappa_ij delta(t) - kappa_ij (gamma - kappa_j) exp(-(gamma - kappa_j) t).
/// Other kernels are deconvolved on `grid` (a tabulated kernel defaults to
/// its own grid), which must satisfy h <= 1 / (20 rate) where `rate` is the
/// fastest relative variation of q. Throws InvalidArgument for a missing
/// or too coarse grid and NumericalError for an ill-conditioned solve.
RateKernel rates_from_jump_kernel(const JumpKernel& q,
                                  const std::optional<TimeGrid>& grid = std::nullopt);

}  // namespace hybridmap
