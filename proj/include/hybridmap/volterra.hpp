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

#include <variant>
#include <vector>

#include "hybridmap/numkit.hpp"

namespace hybridmap {

/// One exponential component A exp(-decay t) of a matrix kernel.
struct KernelTerm {
  RealMatrix amplitude;
  double decay;
};

/// Regular kernel part sampled on the solve grid.
struct GriddedKernel {
  TimeGrid grid;
  std::vector<RealMatrix> samples;
};

/// x'(t) = (L0 + K0) x(t) + int_0^t K(t - s) x(s) ds with x(0) given.
///
/// x may hold several columns; each column evolves independently under the
/// same (m x m) operators, which lets a whole transition matrix be
/// propagated at once.
struct VolterraProblem {
  RealMatrix constant;  // L0
  RealMatrix delta;     // K0, the instantaneous kernel part
  std::variant<std::vector<KernelTerm>, GriddedKernel> regular;
  RealMatrix initial;   // m x c

  std::size_t dimension() const { return static_cast<std::size_t>(initial.rows()); }
  /// Throws InvalidArgument on inconsistent shapes or non-positive decays.
  void check() const;
};

using Trajectory = std::vector<RealMatrix>;

/// Trapezoidal convolution quadrature with an explicit Euler predictor and
/// one trapezoidal corrector per step. Second order in h. Works with both
/// exponential-sum and gridded kernels (gridded ones must live on `grid`).
/// Throws NumericalError when the solution norm grows beyond 1e12 times its
/// initial size.
Trajectory solve_quadrature(const VolterraProblem& problem, const TimeGrid& grid);

/// Exact reduction of an exponential-sum kernel to a local linear system via
/// y_r(t) = int_0^t exp(-decay_r (t - s)) x(s) ds, integrated with classical
/// fourth-order Runge-Kutta. Throws InvalidArgument for gridded kernels.
Trajectory solve_expsum_embedding(const VolterraProblem& problem, const TimeGrid& grid);

}  // namespace hybridmap
