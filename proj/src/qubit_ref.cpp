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

#include "hybridmap/qubit_ref.hpp"

#include <cmath>

#include "hybridmap/errors.hpp"

namespace hybridmap {

void QubitParams::check() const {
  for (double v : {kappa_plus, kappa_minus, gamma, gamma_z}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("qubit rates must be finite and nonnegative");
    }
  }
  if (!(gamma > 0.0)) throw InvalidArgument("qubit kernel decay gamma must be positive");
  if (!std::isfinite(omega)) throw InvalidArgument("qubit splitting omega must be finite");
}

double QubitParams::population_discriminant() const {
  return gamma * gamma - 4.0 * (kappa_plus + kappa_minus);
}

double QubitParams::coherence_discriminant() const {
  return gamma * gamma - 2.0 * (kappa_plus + kappa_minus);
}

bool QubitParams::overdamped() const { return population_discriminant() >= 0.0; }

QubitParams fig1_params(double gamma_z) {
  QubitParams p;
  p.kappa_plus = 1.0;
  p.kappa_minus = 3.0;
  p.gamma = 5.0;
  p.gamma_z = gamma_z;
  return p;
}

double relaxation_profile(double gamma, double discriminant, double t) {
  if (discriminant == 0.0) return std::exp(-0.5 * gamma * t) * (1.0 + 0.5 * gamma * t);
  if (discriminant > 0.0) {
    const double r = std::sqrt(discriminant);
    // e^{-gt/2} cosh(rt/2) and e^{-gt/2} sinh(rt/2) without overflow.
    const double slow = std::exp(-0.5 * (gamma - r) * t);
    const double fast = std::exp(-0.5 * (gamma + r) * t);
    return 0.5 * (slow + fast) + (gamma / r) * 0.5 * (slow - fast);
  }
  const double w = std::sqrt(-discriminant);
  return std::exp(-0.5 * gamma * t) *
         (std::cos(0.5 * w * t) + (gamma / w) * std::sin(0.5 * w * t));
}

QubitCurves closed_forms(const QubitParams& p, const TimeGrid& grid) {
  p.check();
  const double total = p.kappa_plus + p.kappa_minus;
  const double dpop = p.population_discriminant();
  const double dcoh = p.coherence_discriminant();
  QubitCurves c;
  c.t = grid.nodes();
  const std::size_t nodes = grid.size();
  c.t00.resize(nodes);
  c.t11.resize(nodes);
  c.lambda01.resize(nodes);
  c.det_c.resize(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    const double t = c.t[n];
    if (total == 0.0) {
      c.t00[n] = c.t11[n] = c.lambda01[n] = 1.0;
    } else {
      const double relax = relaxation_profile(p.gamma, dpop, t);
      c.t00[n] = (p.kappa_plus + p.kappa_minus * relax) / total;
      c.t11[n] = (p.kappa_minus + p.kappa_plus * relax) / total;
      c.lambda01[n] = relaxation_profile(p.gamma, dcoh, t);
    }
    const double damped = c.lambda01[n] * std::exp(-p.gamma_z * t);
    c.det_c[n] = c.t00[n] * c.t11[n] - damped * damped;
  }
  return c;
}

Fig1Dataset fig1_dataset(const TimeGrid& grid) {
  Fig1Dataset out;
  out.t = grid.nodes();
  out.det_gz0 = closed_forms(fig1_params(0.0), grid).det_c;
  out.det_gz0p1 = closed_forms(fig1_params(0.1), grid).det_c;
  out.det_gz1 = closed_forms(fig1_params(1.0), grid).det_c;
  return out;
}

namespace {

DecoherenceModel qubit_dephasing(double gamma_z) {
  ComplexMatrix d(2, 2);
  d << 1.0, -1.0, -1.0, 1.0;
  return DecoherenceModel::gkls(0.5 * gamma_z * d);
}

}  // namespace

HybridGeneratorSpec qubit_rates_spec(const QubitParams& p) {
  p.check();
  RateKernel::ExpSum terms(4);
  if (p.kappa_plus != 0.0) terms[0 * 2 + 1].push_back({p.kappa_plus, p.gamma});
  if (p.kappa_minus != 0.0) terms[1 * 2 + 0].push_back({p.kappa_minus, p.gamma});
  return HybridGeneratorSpec{{0.0, p.omega},
                             RateKernel::exponential(RealMatrix::Zero(2, 2), std::move(terms)),
                             qubit_dephasing(p.gamma_z)};
}

HybridGeneratorSpec qubit_semi_markov_spec(const QubitParams& p) {
  p.check();
  RealMatrix kappa(2, 2);
  kappa << 0.0, p.kappa_plus, p.kappa_minus, 0.0;
  const RealMatrix gamma = RealMatrix::Constant(2, 2, p.gamma);
  return HybridGeneratorSpec{{0.0, p.omega}, JumpKernel::exponential(kappa, gamma),
                             qubit_dephasing(p.gamma_z)};
}

}  // namespace hybridmap
