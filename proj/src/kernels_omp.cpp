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

#include "hybridmap/kernels.hpp"

#include <omp.h>

#include "hybridmap/execution.hpp"
#include "kernel_detail.hpp"

namespace hybridmap {

int max_threads() { return omp_get_max_threads(); }

namespace kernels {

// Work per node grows linearly with n, so hand out small chunks.

void trapezoid_convolve_omp(std::span<const double> f, std::span<const double> g,
                            double h, double delta, std::span<double> out) {
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out[i] = h * detail::trapezoid_node(f, g, i) + delta * g[i];
  }
}

void trapezoid_convolve_add_omp(std::span<const double> f, std::span<const double> g,
                                double h, std::span<double> out) {
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out[i] += h * detail::trapezoid_node(f, g, i);
  }
}

std::vector<double> min_eig_sweep_omp(std::span<const ComplexMatrix> matrices) {
  std::vector<double> out(matrices.size());
  const auto count = static_cast<std::ptrdiff_t>(matrices.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    out[static_cast<std::size_t>(n)] = detail::min_eig(matrices[static_cast<std::size_t>(n)]);
  }
  return out;
}

}  // namespace kernels
}  // namespace hybridmap
