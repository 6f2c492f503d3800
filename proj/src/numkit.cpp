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

#include "hybridmap/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "hybridmap/errors.hpp"
#include "hybridmap/kernels.hpp"

namespace hybridmap {

TimeGrid::TimeGrid(double t_max, std::size_t steps) : t_max_(t_max), steps_(steps) {
  if (!std::isfinite(t_max) || t_max <= 0.0) {
    throw InvalidArgument("TimeGrid: t_max must be a positive finite number");
  }
  if (steps == 0) throw InvalidArgument("TimeGrid: steps must be positive");
  step_ = t_max / static_cast<double>(steps);
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> t(size());
  for (std::size_t n = 0; n < t.size(); ++n) t[n] = node(n);
  return t;
}

TimeGrid TimeGrid::refined(std::size_t factor) const {
  if (factor == 0) throw InvalidArgument("TimeGrid::refined: factor must be positive");
  return TimeGrid(t_max_, steps_ * factor);
}

double HermitianMatrix::hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw InvalidArgument("HermitianMatrix: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const double err = hermiticity_error(m_);
  if (!(err <= kTolerance * scale)) {
    std::ostringstream msg;
    msg << "HermitianMatrix: matrix is not Hermitian (max |M - M^dagger| = " << err << ")";
    throw InvalidArgument(msg.str());
  }
}

HermitianMatrix::HermitianMatrix(const RealMatrix& m)
    : HermitianMatrix(ComplexMatrix(m.cast<Complex>())) {}

double hermitian_min_eig(const HermitianMatrix& m) {
  return kernels::min_eig_sweep_serial(std::span(&m.matrix(), 1)).front();
}

Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void check_classical_generator(const RealMatrix& generator) {
  if (generator.rows() != generator.cols() || generator.rows() == 0) {
    throw InvalidArgument("classical generator must be square and non-empty");
  }
  const double tol = 1e-12 * std::max(1.0, generator.cwiseAbs().maxCoeff());
  for (Eigen::Index l = 0; l < generator.cols(); ++l) {
    for (Eigen::Index k = 0; k < generator.rows(); ++k) {
      if (k != l && generator(k, l) < 0.0) {
        std::ostringstream msg;
        msg << "classical generator has negative off-diagonal entry (" << k << ',' << l
            << ") = " << generator(k, l);
        throw InvalidArgument(msg.str());
      }
    }
    const double sum = generator.col(l).sum();
    if (!(std::abs(sum) <= tol)) {
      std::ostringstream msg;
      msg << "classical generator column " << l << " sums to " << sum << ", expected 0";
      throw InvalidArgument(msg.str());
    }
  }
}

std::vector<RealMatrix> semigroup_exp(const RealMatrix& generator, const TimeGrid& grid) {
  check_classical_generator(generator);
  std::vector<RealMatrix> out;
  out.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const RealMatrix scaled = generator * grid.node(n);
    out.emplace_back(scaled.exp());
  }
  return out;
}

std::vector<ComplexMatrix> matrix_exp_trajectory(const ComplexMatrix& a, const TimeGrid& grid) {
  if (a.rows() != a.cols()) throw InvalidArgument("matrix_exp_trajectory: matrix must be square");
  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const ComplexMatrix scaled = a * Complex(grid.node(n), 0.0);
    out.emplace_back(scaled.exp());
  }
  return out;
}

std::vector<double> grid_convolve(const GridFunction& f, std::span<const double> g,
                                  const TimeGrid& grid, Execution exec) {
  if (f.values.size() != grid.size() || g.size() != grid.size()) {
    std::ostringstream msg;
    msg << "grid_convolve: sample counts (" << f.values.size() << ", " << g.size()
        << ") do not match the grid (" << grid.size() << " nodes)";
    throw InvalidArgument(msg.str());
  }
  std::vector<double> out(grid.size());
  kernels::trapezoid_convolve(f.values, g, grid.step(), f.delta_weight, out, exec);
  return out;
}

double sup_norm(std::span<const RealMatrix> trajectory) {
  double s = 0.0;
  for (const auto& m : trajectory) {
    if (m.size() > 0) s = std::max(s, m.cwiseAbs().maxCoeff());
  }
  return s;
}

}  // namespace hybridmap
