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
#include <span>

#include <Eigen/Eigenvalues>

#include "hybridmap/numkit.hpp"

namespace hybridmap::kernels::detail {

// Shared per-element bodies so the serial and OpenMP variants execute the
// same floating point operations in the same order.

inline double trapezoid_node(std::span<const double> f, std::span<const double> g,
                             std::size_t n) {
  if (n == 0) return 0.0;
  double acc = 0.5 * f[n] * g[0];
  for (std::size_t m = 1; m < n; ++m) acc += f[n - m] * g[m];
  acc += 0.5 * f[0] * g[n];
  return acc;
}

inline double min_eig(const ComplexMatrix& m) {
  if (m.rows() == 1) return m(0, 0).real();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace hybridmap::kernels::detail
