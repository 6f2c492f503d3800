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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hybridmap/execution.hpp"

namespace hybridmap {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Uniform time grid t_n = n * h, n = 0..steps, with h = t_max / steps.
class TimeGrid {
 public:
  TimeGrid(double t_max, std::size_t steps);

  double t_max() const { return t_max_; }
  std::size_t steps() const { return steps_; }
  double step() const { return step_; }
  std::size_t size() const { return steps_ + 1; }

  /// Node n; the last node is exactly t_max.
  double node(std::size_t n) const {
    return n == steps_ ? t_max_ : static_cast<double>(n) * step_;
  }
  std::vector<double> nodes() const;

  /// Same interval with `factor` times as many steps.
  TimeGrid refined(std::size_t factor) const;

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.t_max_ == b.t_max_ && a.steps_ == b.steps_;
  }

 private:
  double t_max_;
  std::size_t steps_;
  double step_;
};

/// Complex matrix checked at construction to be Hermitian within 1e-12
/// (scaled by max(1, max |M_kl|)).
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit HermitianMatrix(ComplexMatrix m);
  explicit HermitianMatrix(const RealMatrix& m);

  std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t k, std::size_t l) const {
    return m_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  }

  /// Largest |M_kl - conj(M_lk)|.
  static double hermiticity_error(const ComplexMatrix& m);

 private:
  ComplexMatrix m_;
};

/// Smallest eigenvalue of a Hermitian matrix.
double hermitian_min_eig(const HermitianMatrix& m);

/// All eigenvalues in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& m);

/// Checks the Kolmogorov structure of a classical generator: off-diagonal
/// entries nonnegative and columns summing to zero within 1e-12 (scaled by
/// the largest entry). Throws InvalidArgument naming the offending entry.
void check_classical_generator(const RealMatrix& generator);

/// e^{t_n L} at every node of the grid for a classical generator L.
/// Throws InvalidArgument when L is not a valid generator.
std::vector<RealMatrix> semigroup_exp(const RealMatrix& generator, const TimeGrid& grid);

/// e^{t_n A} for an arbitrary complex square matrix, no structural checks.
std::vector<ComplexMatrix> matrix_exp_trajectory(const ComplexMatrix& a, const TimeGrid& grid);

/// A function sampled on a TimeGrid, optionally carrying an instantaneous
/// part delta_weight * delta(t) with the one-sided full-mass convention
/// int_0^t delta(t - s) g(s) ds = g(t).
struct GridFunction {
  std::vector<double> values;
  double delta_weight = 0.0;
};

/// (f * g)(t_n) = int_0^{t_n} f(t_n - s) g(s) ds by the trapezoidal rule,
/// plus delta_weight * g(t_n). Throws InvalidArgument on a size mismatch.
std::vector<double> grid_convolve(const GridFunction& f, std::span<const double> g,
                                  const TimeGrid& grid,
                                  Execution exec = Execution::parallel);

/// Largest absolute entry over a trajectory of matrices.
double sup_norm(std::span<const RealMatrix> trajectory);

}  // namespace hybridmap
