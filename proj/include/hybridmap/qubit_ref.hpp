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

#include <vector>

#include "hybridmap/hybrid_map.hpp"
#include "hybridmap/numkit.hpp"

namespace hybridmap {

/// Qubit with exponential memory kernels k_+(t) = kappa_plus exp(-gamma t)
/// (jumps 1 -> 0) and k_-(t) = kappa_minus exp(-gamma t) (jumps 0 -> 1),
/// dephasing rate gamma_z and level splitting omega = E_1 - E_0.
struct QubitParams {
  double kappa_plus = 1.0;
  double kappa_minus = 3.0;
  double gamma = 5.0;
  double gamma_z = 0.0;
  double omega = 0.0;

  /// Throws InvalidArgument unless all rates are finite and nonnegative
  /// and gamma > 0.
  void check() const;
  /// gamma^2 - 4 (kappa_plus + kappa_minus): square of the population decay parameter.
  double population_discriminant() const;
  /// gamma^2 - 2 (kappa_plus + kappa_minus): square of the coherence decay parameter.
  double coherence_discriminant() const;
  /// Both discriminants nonnegative (purely relaxational regime).
  bool overdamped() const;
};

/// Parameters of the reference qubit: gamma = 5, kappa = (1, 3).
QubitParams fig1_params(double gamma_z = 0.0);

/// exp(-gamma t / 2) [cosh(r t / 2) + (gamma / r) sinh(r t / 2)] with
/// r^2 = discriminant, continued to trigonometric form for r^2 < 0 and to
/// 1 + gamma t / 2 at r = 0.
double relaxation_profile(double gamma, double discriminant, double t);

struct QubitCurves {
  std::vector<double> t;
  std::vector<double> t00;
  std::vector<double> t11;
  std::vector<double> lambda01;
  std::vector<double> det_c;
};

/// Closed-form T_00, T_11, lambda_01 and det C = T_00 T_11 - lambda_01^2 exp(-2 gamma_z t).
QubitCurves closed_forms(const QubitParams& p, const TimeGrid& grid);

struct Fig1Dataset {
  std::vector<double> t;
  std::vector<double> det_gz0;
  std::vector<double> det_gz0p1;
  std::vector<double> det_gz1;
};

/// det C(t) for gamma_z in {0, 0.1, 1} at the reference parameters.
Fig1Dataset fig1_dataset(const TimeGrid& grid);

/// Rates-mode generator: W_01 = k_+, W_10 = k_-, energies (0, omega), GKLS
/// dephasing D = (gamma_z / 2) [[1, -1], [-1, 1]].
HybridGeneratorSpec qubit_rates_spec(const QubitParams& p);

/// Semi-Markov-mode generator with q_01 = k_+, q_10 = k_-.
HybridGeneratorSpec qubit_semi_markov_spec(const QubitParams& p);

}  // namespace hybridmap
