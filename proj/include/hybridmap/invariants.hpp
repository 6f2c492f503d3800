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

#include <string>
#include <vector>

#include "hybridmap/config.hpp"
#include "hybridmap/hybrid_map.hpp"

namespace hybridmap {

/// One invariant: an error measure and the bound it must not exceed.
struct InvariantCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed() const { return value <= bound; }
};

/// Node-wise structural checks of a trajectory, each evaluated on the basis
/// states, the uniform superposition and `extra_states`:
///   trace error <= 1e-10, Hermiticity error <= 1e-12,
///   column-stochasticity of T <= 1e-8 (semi-Markov mode only),
///   |min-eig Choi - min(min-eig C, min offdiag T)| <= 1e-8.
std::vector<InvariantCheck> structural_checks(const MapTrajectory& traj, bool semi_markov,
                                              const std::string& label,
                                              const std::vector<ComplexMatrix>& extra_states = {},
                                              Execution exec = Execution::parallel);

/// Built-in suite on the reference qubit: closed-form agreement for both
/// Volterra backends, series/Volterra duality, Markov limit, swap symmetry
/// of det C, and structural checks in both generator modes.
std::vector<InvariantCheck> reference_suite(Execution exec = Execution::parallel);

/// Structural checks of a configured run plus the reference suite.
std::vector<InvariantCheck> validation_suite(const RunConfig* config,
                                             Execution exec = Execution::parallel);

}  // namespace hybridmap
