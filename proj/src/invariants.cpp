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

#include "hybridmap/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "hybridmap/qubit_ref.hpp"

namespace hybridmap {

namespace {

using Index = Eigen::Index;

std::vector<ComplexMatrix> probe_states(std::size_t d) {
  std::vector<ComplexMatrix> out;
  const auto n = static_cast<Index>(d);
  for (Index k = 0; k < n; ++k) {
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    rho(k, k) = 1.0;
    out.push_back(rho);
  }
  out.push_back(ComplexMatrix::Constant(n, n, Complex(1.0 / static_cast<double>(d), 0.0)));
  return out;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) e = std::max(e, std::abs(a[n] - b[n]));
  return e;
}

}  // namespace

std::vector<InvariantCheck> structural_checks(const MapTrajectory& traj, bool semi_markov,
                                              const std::string& label,
                                              const std::vector<ComplexMatrix>& extra_states,
                                              Execution exec) {
  auto states = probe_states(traj.dimension());
  states.insert(states.end(), extra_states.begin(), extra_states.end());

  double trace_error = 0.0, hermiticity = 0.0, stochastic = 0.0;
  for (std::size_t n = 0; n < traj.grid.size(); ++n) {
    for (const auto& rho0 : states) {
      const ComplexMatrix rho = assemble_and_apply(traj, rho0, n);
      trace_error = std::max(trace_error, std::abs(rho.trace() - Complex(1.0, 0.0)));
      hermiticity = std::max(hermiticity, HermitianMatrix::hermiticity_error(rho));
    }
    if (semi_markov) {
      const Eigen::RowVectorXd sums = traj.populations[n].colwise().sum();
      stochastic = std::max(stochastic, (sums.array() - 1.0).abs().maxCoeff());
      stochastic = std::max(stochastic, std::max(0.0, -traj.populations[n].minCoeff()));
    }
  }

  WitnessOptions wopts;
  wopts.execution = exec;
  wopts.consistency_tolerance = 1e300;  // measured below instead of thrown
  const auto w = cp_witness(traj, wopts);
  double choi = 0.0;
  for (std::size_t n = 0; n < w.choi_min_eigenvalues.size(); ++n) {
    const double expected = std::min(w.min_eigenvalues[n], w.min_offdiag_populations[n]);
    choi = std::max(choi, std::abs(w.choi_min_eigenvalues[n] - expected));
  }

  std::vector<InvariantCheck> out{
      {label + ": trace error", trace_error, 1e-10},
      {label + ": Hermiticity error", hermiticity, 1e-12},
      {label + ": Choi vs C-witness minimal eigenvalue", choi, 1e-8},
  };
  if (semi_markov) out.push_back({label + ": column-stochasticity of T", stochastic, 1e-8});
  return out;
}

std::vector<InvariantCheck> reference_suite(Execution exec) {
  std::vector<InvariantCheck> out;
  const TimeGrid grid(5.0, 5000);
  const QubitParams p = fig1_params();
  const QubitCurves exact = closed_forms(p, grid);

  for (const auto backend : {VolterraBackend::quadrature, VolterraBackend::expsum_embedding}) {
    TrajectoryOptions opts;
    opts.backend = backend;
    opts.series.execution = exec;
    const auto traj = build_trajectory(qubit_rates_spec(p), grid, opts);
    std::vector<double> t00, t11, lam;
    for (std::size_t n = 0; n < grid.size(); ++n) {
      t00.push_back(traj.populations[n](0, 0));
      t11.push_back(traj.populations[n](1, 1));
      lam.push_back(traj.coherences[n](0, 1));
    }
    const std::string name =
        backend == VolterraBackend::quadrature ? "quadrature" : "exponential embedding";
    const double err = std::max({sup_diff(t00, exact.t00), sup_diff(t11, exact.t11),
                                 sup_diff(lam, exact.lambda01)});
    out.push_back({"qubit closed forms vs " + name + " backend", err, 1e-6});
  }

  {
    const auto sm = qubit_semi_markov_spec(p);
    const auto& q = std::get<JumpKernel>(sm.dissipation);
    SeriesOptions sopts;
    sopts.execution = exec;
    // The trapezoidal series needs h = 5e-4 to reach 1e-6.
    const TimeGrid fine(grid.t_max(), 2 * grid.steps());
    const auto series = build_T_series(q, fine, sopts);
    HybridGeneratorSpec rates{sm.energies, rates_from_jump_kernel(q, fine), sm.decoherence};
    const auto volterra = population_trajectory(rates, fine);
    double err = 0.0;
    for (std::size_t n = 0; n < fine.size(); ++n) {
      err = std::max(err, (series.transition[n] - volterra[n]).cwiseAbs().maxCoeff());
    }
    out.push_back({"renewal series vs Volterra rate equation", err, 1e-6});
    const auto traj = build_trajectory(sm, grid, TrajectoryOptions{VolterraBackend::automatic, sopts});
    auto checks = structural_checks(traj, true, "semi-Markov qubit", {}, exec);
    out.insert(out.end(), checks.begin(), checks.end());
  }

  {
    // Markov limit against the classical semigroup and exact exponentials.
    RealMatrix rates(3, 3);
    rates << 0.0, 0.4, 0.1, 0.7, 0.0, 0.3, 0.2, 0.5, 0.0;
    ComplexMatrix dmat(3, 3);
    dmat << Complex(0.6, 0), Complex(0.1, 0.2), Complex(0, 0), Complex(0.1, -0.2),
        Complex(0.5, 0), Complex(0.05, 0), Complex(0, 0), Complex(0.05, 0), Complex(0.3, 0);
    const TimeGrid mgrid(3.0, 300);
    HybridGeneratorSpec spec{{0.0, 1.0, 2.5}, RateKernel::markov(rates),
                             DecoherenceModel::gkls(dmat)};
    const auto traj = build_trajectory(spec, mgrid);
    RealMatrix gen = rates;
    gen.diagonal() = -rates.colwise().sum().transpose();
    const auto exact_t = semigroup_exp(gen, mgrid);
    const ComplexMatrix a = spec.decoherence.exponent();
    double err = 0.0;
    for (std::size_t n = 0; n < mgrid.size(); ++n) {
      err = std::max(err, (traj.populations[n] - exact_t[n]).cwiseAbs().maxCoeff());
      const double t = mgrid.node(n);
      for (Index k = 0; k < 3; ++k) {
        for (Index l = 0; l < 3; ++l) {
          if (k == l) continue;
          const double lam = std::exp(0.5 * (gen(k, k) + gen(l, l)) * t);
          const Complex mu = std::exp(-a(k, l) * t);
          err = std::max(err, std::abs(traj.coherences[n](k, l) * traj.decoherence[n](k, l) -
                                       lam * mu));
        }
      }
    }
    out.push_back({"Markov limit vs matrix exponential", err, 1e-8});
    auto checks = structural_checks(traj, false, "Markov qutrit", {}, exec);
    out.insert(out.end(), checks.begin(), checks.end());
  }

  {
    double err = 0.0;
    for (const double gz : {0.0, 0.1, 1.0}) {
      QubitParams a = fig1_params(gz), b = a;
      std::swap(b.kappa_plus, b.kappa_minus);
      err = std::max(err, sup_diff(closed_forms(a, grid).det_c, closed_forms(b, grid).det_c));
      const auto traj = build_trajectory(qubit_rates_spec(a), grid);
      std::swap(a.kappa_plus, a.kappa_minus);
      const auto swapped = build_trajectory(qubit_rates_spec(a), grid);
      for (std::size_t n = 0; n < grid.size(); ++n) {
        err = std::max(err, std::abs(qubit_witness_determinant(traj, n) -
                                     qubit_witness_determinant(swapped, n)));
      }
    }
    out.push_back({"det C symmetry under kappa_plus <-> kappa_minus", err, 1e-10});
    const auto traj = build_trajectory(qubit_rates_spec(fig1_params(0.1)), grid);
    auto checks = structural_checks(traj, false, "rates-mode qubit", {}, exec);
    out.insert(out.end(), checks.begin(), checks.end());
  }
  return out;
}

std::vector<InvariantCheck> validation_suite(const RunConfig* config, Execution exec) {
  std::vector<InvariantCheck> out;
  if (config != nullptr) {
    TrajectoryOptions opts;
    opts.backend = config->backend;
    opts.series.execution = exec;
    const auto traj = build_trajectory(config->spec, config->grid, opts);
    std::vector<ComplexMatrix> extra;
    if (config->initial_state) extra.push_back(*config->initial_state);
    out = structural_checks(traj, config->spec.semi_markov_mode(), "configured run", extra, exec);
  }
  auto ref = reference_suite(exec);
  out.insert(out.end(), ref.begin(), ref.end());
  return out;
}

}  // namespace hybridmap
