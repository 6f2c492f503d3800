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

#include "kernel_detail.hpp"

namespace hybridmap::kernels {

void trapezoid_convolve_serial(std::span<const double> f, std::span<const double> g,
                               double h, double delta, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = h * detail::trapezoid_node(f, g, n) + delta * g[n];
  }
}

void trapezoid_convolve_add_serial(std::span<const double> f, std::span<const double> g,
                                   double h, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] += h * detail::trapezoid_node(f, g, n);
  }
}

std::vector<double> min_eig_sweep_serial(std::span<const ComplexMatrix> matrices) {
  std::vector<double> out(matrices.size());
  for (std::size_t n = 0; n < matrices.size(); ++n) out[n] = detail::min_eig(matrices[n]);
  return out;
}

}  // namespace hybridmap::kernels
