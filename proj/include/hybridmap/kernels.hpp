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

// Data-parallel kernels. Each kernel has a serial reference implementation
// (kernels_serial.cpp) and an OpenMP implementation (kernels_omp.cpp). The
// two must agree bitwise: every output element is computed by the same
// sequence of floating point operations in both.

#include <cstddef>
#include <span>
#include <vector>

#include "hybridmap/numkit.hpp"

namespace hybridmap::kernels {

/// out[n] = h * (f[n] g[0] / 2 + sum_{m=1}^{n-1} f[n-m] g[m] + f[0] g[n] / 2)
///          + delta * g[n],   out[0] = delta * g[0].
void trapezoid_convolve_serial(std::span<const double> f, std::span<const double> g,
                               double h, double delta, std::span<double> out);
void trapezoid_convolve_omp(std::span<const double> f, std::span<const double> g,
                            double h, double delta, std::span<double> out);

/// Same as trapezoid_convolve but accumulates into out (out += f * g).
void trapezoid_convolve_add_serial(std::span<const double> f, std::span<const double> g,
                                   double h, std::span<double> out);
void trapezoid_convolve_add_omp(std::span<const double> f, std::span<const double> g,
                                double h, std::span<double> out);

/// Minimal eigenvalue of each matrix (assumed Hermitian).
std::vector<double> min_eig_sweep_serial(std::span<const ComplexMatrix> matrices);
std::vector<double> min_eig_sweep_omp(std::span<const ComplexMatrix> matrices);

inline void trapezoid_convolve(std::span<const double> f, std::span<const double> g,
                               double h, double delta, std::span<double> out,
                               Execution exec) {
  if (exec == Execution::parallel) {
    trapezoid_convolve_omp(f, g, h, delta, out);
  } else {
    trapezoid_convolve_serial(f, g, h, delta, out);
  }
}

inline void trapezoid_convolve_add(std::span<const double> f, std::span<const double> g,
                                   double h, std::span<double> out, Execution exec) {
  if (exec == Execution::parallel) {
    trapezoid_convolve_add_omp(f, g, h, out);
  } else {
    trapezoid_convolve_add_serial(f, g, h, out);
  }
}

inline std::vector<double> min_eig_sweep(std::span<const ComplexMatrix> matrices,
                                         Execution exec) {
  return exec == Execution::parallel ? min_eig_sweep_omp(matrices)
                                     : min_eig_sweep_serial(matrices);
}

}  // namespace hybridmap::kernels
