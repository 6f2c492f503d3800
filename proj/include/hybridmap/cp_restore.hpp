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
#include <vector>

#include "hybridmap/hybrid_map.hpp"

namespace hybridmap {

struct RestorationOptions {
  double tolerance = 1e-3;       // final bracket width
  double max_rate = 10.0;        // upper end of the search bracket
  double feasibility = 1e-10;    // min-eig C >= -feasibility counts as CP
  TrajectoryOptions trajectory;
  Execution execution = Execution::parallel;
  /// Probe 16 rates on each side of the result to confirm monotone
  /// feasibility. Always done for d > 2.
  bool monotonicity_sweep = false;
};

struct RestorationResult {
  double rate = 0.0;                 // minimal uniform dephasing gamma_z*
  double margin_at_rate = 0.0;       // min over nodes of min-eig C at gamma_z*
  double margin_above = 0.0;         // same at gamma_z* + tolerance (full re-simulation)
  double margin_below = 0.0;         // same at max(0, gamma_z* - 10 tolerance); 0 when rate == 0
  double refined_margin = 0.0;       // at gamma_z* + tolerance on the 2x refined grid
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  std::size_t iterations = 0;
  bool monotone_checked = false;
};

/// Smallest gamma_z in [0, max_rate] (to within `tolerance`) such that adding
/// uniform dephasing exp(-gamma_z t) to every coherence makes C(t) positive
/// semidefinite at all grid nodes. The result is certified by fresh
/// simulations: CP at gamma_z* + tol on the grid and on a 2x refined grid,
/// and not CP at gamma_z* - 10 tol when gamma_z* > 0.
///
/// Throws NumericalError when even max_rate does not restore positivity or
/// when a certificate check fails.
RestorationResult minimal_uniform_dephasing(const HybridGeneratorSpec& spec, const TimeGrid& grid,
                                            const RestorationOptions& options = {});

/// Decoherence schedule that saturates |lambda_kl mu_kl|^2 = T_kk T_ll.
struct CoherenceSchedule {
  std::vector<RealMatrix> rates;            // D_kl(t_n) after clamping at 0
  std::vector<RealMatrix> unclamped_rates;  // d/dt ln(|lambda_kl| / sqrt(T_kk T_ll))
  std::vector<ComplexMatrix> factors;       // mu_kl(t_n) realized by the clamped schedule
  std::vector<ComplexMatrix> unclamped_factors;
  struct Clamp {
    std::size_t node;
    std::size_t k;
    std::size_t l;
    double rate;  // the negative unclamped value
  };
  std::vector<Clamp> clamp_events;
};

/// Throws InvalidArgument when some T_kk(t_n) <= 0 (logarithm singular) or
/// the inputs are inconsistent.
CoherenceSchedule max_coherence_schedule(const std::vector<RealMatrix>& populations,
                                         const std::vector<RealMatrix>& coherences,
                                         const TimeGrid& grid);

}  // namespace hybridmap
