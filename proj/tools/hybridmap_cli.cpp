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

// Command-line front end.
//
//   hybridmap simulate   --config run.json --output run.csv
//   hybridmap restore-cp --config run.json [--output certificate.csv]
//   hybridmap fig1       --output fig1.csv
//   hybridmap sample     --config run.json --output sample.csv [--trajectories N]
//   hybridmap sample     --noise 1 1 --t-max 2 --steps 200 --output noise.csv
//   hybridmap validate   [--config run.json]
//
// Exit codes: 0 success, 1 validation failure, 2 usage or configuration
// error, 3 numerical failure, 4 I/O failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hybridmap/config.hpp"
#include "hybridmap/cp_restore.hpp"
#include "hybridmap/csv.hpp"
#include "hybridmap/hybrid_map.hpp"
#include "hybridmap/invariants.hpp"
#include "hybridmap/qubit_ref.hpp"
#include "hybridmap/sampler.hpp"

namespace hm = hybridmap;

namespace {

constexpr int kValidationFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;
constexpr int kIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_table(const std::string& path, const hm::csv::Table& table) {
  try {
    hm::csv::write_atomic(path, table.render());
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

hm::RunConfig load(const std::string& path) {
  auto config = hm::load_config(path);
  hm::apply_seed_override(config);
  return config;
}

std::string pair_name(const char* prefix, std::size_t k, std::size_t l, const char* suffix) {
  return std::string(prefix) + std::to_string(k) + std::to_string(l) + suffix;
}

int run_simulate(const std::string& config_path, const std::string& output, hm::Execution exec) {
  const auto config = load(config_path);
  hm::TrajectoryOptions opts;
  opts.backend = config.backend;
  opts.series.execution = exec;
  const auto traj = hm::build_trajectory(config.spec, config.grid, opts);
  hm::WitnessOptions wopts;
  wopts.execution = exec;
  const auto witness = hm::cp_witness(traj, wopts);

  const std::size_t d = traj.dimension();
  const std::size_t nodes = config.grid.size();
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  // Trace error is measured on the configured state, or on the basis states
  // and the uniform superposition when none is given.
  std::vector<hm::ComplexMatrix> probes;
  if (config.initial_state) {
    probes.push_back(*config.initial_state);
  } else {
    for (std::size_t k = 0; k < d; ++k) {
      hm::ComplexMatrix rho = hm::ComplexMatrix::Zero(idx(d), idx(d));
      rho(idx(k), idx(k)) = 1.0;
      probes.push_back(rho);
    }
    probes.push_back(hm::ComplexMatrix::Constant(idx(d), idx(d), 1.0 / static_cast<double>(d)));
  }

  hm::csv::Table table;
  table.add("t", config.grid.nodes());
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      std::vector<double> col(nodes);
      for (std::size_t n = 0; n < nodes; ++n) col[n] = traj.populations[n](idx(k), idx(l));
      table.add(pair_name("T_", k, l, ""), std::move(col));
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k + 1; l < d; ++l) {
      std::vector<double> col(nodes);
      for (std::size_t n = 0; n < nodes; ++n) col[n] = std::abs(traj.coherences[n](idx(k), idx(l)));
      table.add(pair_name("lambda_", k, l, "_abs"), std::move(col));
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k + 1; l < d; ++l) {
      std::vector<double> col(nodes);
      for (std::size_t n = 0; n < nodes; ++n) col[n] = std::abs(traj.decoherence[n](idx(k), idx(l)));
      table.add(pair_name("mu_", k, l, "_abs"), std::move(col));
    }
  }
  table.add("mineig_C", witness.min_eigenvalues);
  if (d == 2) {
    std::vector<double> col(nodes);
    for (std::size_t n = 0; n < nodes; ++n) col[n] = hm::qubit_witness_determinant(traj, n);
    table.add("detC", std::move(col));
  }
  std::vector<double> trace_error(nodes, 0.0);
  for (std::size_t n = 0; n < nodes; ++n) {
    for (const auto& rho0 : probes) {
      const auto rho = hm::assemble_and_apply(traj, rho0, n);
      trace_error[n] = std::max(trace_error[n], std::abs(rho.trace() - hm::Complex(1.0, 0.0)));
    }
  }
  table.add("trace_error", std::move(trace_error));
  write_table(output, table);
  std::cout << "wrote " << nodes << " rows to " << output << "; min-eig C = "
            << hm::csv::format(witness.global_min) << " at t = "
            << hm::csv::format(config.grid.node(witness.argmin))
            << (witness.completely_positive() ? " (CP)\n" : " (not CP)\n");
  return 0;
}

int run_restore(const std::string& config_path, const std::string& output, double tolerance,
                double max_rate, hm::Execution exec) {
  const auto config = load(config_path);
  hm::RestorationOptions opts;
  opts.tolerance = tolerance;
  opts.max_rate = max_rate;
  opts.execution = exec;
  opts.trajectory.backend = config.backend;
  opts.trajectory.series.execution = exec;
  const auto r = hm::minimal_uniform_dephasing(config.spec, config.grid, opts);
  std::cout << "gamma_z* = " << hm::csv::format(r.rate) << " (bracket ["
            << hm::csv::format(r.bracket_low) << ", " << hm::csv::format(r.bracket_high)
            << "], " << r.iterations << " bisection steps)\n"
            << "min-eig C at gamma_z*:            " << hm::csv::format(r.margin_at_rate) << '\n'
            << "min-eig C at gamma_z* + tol:      " << hm::csv::format(r.margin_above) << '\n'
            << "min-eig C at gamma_z* - 10 tol:   " << hm::csv::format(r.margin_below) << '\n'
            << "refined grid at gamma_z* + tol:   " << hm::csv::format(r.refined_margin) << '\n';
  if (!output.empty()) {
    hm::csv::Table table;
    table.add("gamma_z", {r.rate});
    table.add("bracket_low", {r.bracket_low});
    table.add("bracket_high", {r.bracket_high});
    table.add("margin_at_rate", {r.margin_at_rate});
    table.add("margin_above", {r.margin_above});
    table.add("margin_below", {r.margin_below});
    table.add("refined_margin", {r.refined_margin});
    write_table(output, table);
  }
  return 0;
}

int run_fig1(const std::string& output) {
  const hm::TimeGrid grid(5.0, 5000);
  const auto data = hm::fig1_dataset(grid);
  hm::csv::Table table;
  table.add("t", data.t);
  table.add("detC_gz0", data.det_gz0);
  table.add("detC_gz0p1", data.det_gz0p1);
  table.add("detC_gz1", data.det_gz1);
  write_table(output, table);
  const auto min_of = [](const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); };
  std::cout << "min det C: gamma_z=0 " << hm::csv::format(min_of(data.det_gz0)) << ", gamma_z=0.1 "
            << hm::csv::format(min_of(data.det_gz0p1)) << ", gamma_z=1 "
            << hm::csv::format(min_of(data.det_gz1)) << '\n';
  return 0;
}

int run_sample_jumps(const std::string& config_path, const std::string& output,
                     std::size_t trajectories, std::size_t initial, hm::Execution exec) {
  const auto config = load(config_path);
  const auto* q = std::get_if<hm::JumpKernel>(&config.spec.dissipation);
  if (q == nullptr) throw hm::ConfigError("$.kernel.mode: sampling requires \"semi-markov\"");
  if (initial >= q->dimension()) throw hm::ConfigError("--initial-state: out of range");
  const auto batch = hm::sample_semi_markov(*q, initial, config.grid, trajectories, config.seed, exec);
  hm::SeriesOptions sopts;
  sopts.execution = exec;
  const auto series = hm::build_T_series(*q, config.grid, sopts);
  const auto waiting = hm::survival_and_waiting(*q, config.grid);

  const std::size_t d = q->dimension(), nodes = config.grid.size();
  hm::csv::Table table;
  table.add("t", config.grid.nodes());
  double worst = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> emp(nodes), se(nodes), exact(nodes);
    for (std::size_t n = 0; n < nodes; ++n) {
      emp[n] = batch.frequency(n, k);
      se[n] = batch.standard_error(n, k);
      exact[n] = series.transition[n](static_cast<Eigen::Index>(k),
                                      static_cast<Eigen::Index>(initial));
      worst = std::max(worst, std::abs(emp[n] - exact[n]));
    }
    const std::string suffix = std::to_string(k) + std::to_string(initial);
    table.add("T_hat_" + suffix, std::move(emp));
    table.add("T_hat_se_" + suffix, std::move(se));
    table.add("T_series_" + suffix, std::move(exact));
  }
  std::vector<double> surv(nodes), surv_se(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    surv[n] = batch.survival(n);
    surv_se[n] = batch.survival_standard_error(n);
  }
  table.add("survival_hat", std::move(surv));
  table.add("survival_se", std::move(surv_se));
  table.add("survival_exact", waiting.survival[initial]);
  write_table(output, table);
  std::cout << trajectories << " trajectories, seed " << config.seed
            << ": sup |T_hat - T_series| = " << hm::csv::format(worst) << '\n';
  return 0;
}

int run_sample_noise(double gk, double gl, double t_max, std::size_t steps, std::size_t count,
                     std::uint64_t seed, const std::string& output, hm::Execution exec) {
  const hm::TimeGrid grid(t_max, steps);
  const auto avg = hm::average_dephasing_noise(gk, gl, grid, count, seed, exec);
  hm::csv::Table table;
  table.add("t", grid.nodes());
  std::vector<double> re, im, exact;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    re.push_back(avg.mean[n].real());
    im.push_back(avg.mean[n].imag());
    exact.push_back(std::exp(-0.5 * (gk + gl) * grid.node(n)));
  }
  table.add("mu_hat_re", std::move(re));
  table.add("mu_hat_im", std::move(im));
  table.add("se_re", avg.se_real);
  table.add("se_im", avg.se_imag);
  table.add("mu_exact", std::move(exact));
  write_table(output, table);
  std::cout << count << " realizations, seed " << seed << ": fitted decay rate "
            << hm::csv::format(avg.fitted_rate) << " (Gaussian average predicts "
            << hm::csv::format(0.5 * (gk + gl)) << ")\n";
  return 0;
}

int run_validate(const std::string& config_path, hm::Execution exec) {
  std::optional<hm::RunConfig> config;
  if (!config_path.empty()) config = load(config_path);
  const auto checks = hm::validation_suite(config ? &*config : nullptr, exec);
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << hm::csv::format(c.value)
              << " (bound " << hm::csv::format(c.bound) << ")\n";
    ok = ok && c.passed();
  }
  return ok ? 0 : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid Davies-like open-system maps: simulation, CP restoration, sampling"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "Use the serial reference kernels instead of OpenMP");

  std::string config_path, output;
  double tolerance = 1e-3, max_rate = 10.0;
  std::size_t trajectories = 100000, initial = 0, steps = 200, realizations = 20000;
  double t_max = 2.0;
  std::vector<double> noise;
  std::uint64_t noise_seed = 1;

  auto* simulate = app.add_subcommand("simulate", "Simulate a configured generator to CSV");
  simulate->add_option("--config", config_path, "Run configuration (JSON)")->required();
  simulate->add_option("--output", output, "Output CSV")->required();

  auto* restore = app.add_subcommand("restore-cp", "Minimal uniform dephasing restoring CP");
  restore->add_option("--config", config_path, "Run configuration (JSON)")->required();
  restore->add_option("--output", output, "Certificate CSV");
  restore->add_option("--tolerance", tolerance, "Bracket width")->check(CLI::PositiveNumber);
  restore->add_option("--max-rate", max_rate, "Upper end of the bracket")->check(CLI::PositiveNumber);

  auto* fig1 = app.add_subcommand("fig1", "det C(t) of the reference qubit for gamma_z = 0, 0.1, 1");
  fig1->add_option("--output", output, "Output CSV")->required();

  auto* sample = app.add_subcommand("sample", "Monte Carlo against the analytic results");
  sample->add_option("--config", config_path, "Semi-Markov run configuration (JSON)");
  sample->add_option("--output", output, "Output CSV")->required();
  sample->add_option("--trajectories", trajectories, "Number of jump paths")->check(CLI::PositiveNumber);
  sample->add_option("--initial-state", initial, "Initial level of every path");
  sample->add_option("--noise", noise, "Dephasing-noise averaging with strengths gamma_k gamma_l")
      ->expected(2);
  sample->add_option("--t-max", t_max, "Noise averaging horizon")->check(CLI::PositiveNumber);
  sample->add_option("--steps", steps, "Noise averaging steps")->check(CLI::PositiveNumber);
  sample->add_option("--realizations", realizations, "Noise realizations")->check(CLI::Range(2, 100000000));
  sample->add_option("--seed", noise_seed, "Noise seed (SEED overrides)");

  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  validate->add_option("--config", config_path, "Also check this run configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto exec = serial ? hm::Execution::serial : hm::Execution::parallel;
  try {
    if (simulate->parsed()) return run_simulate(config_path, output, exec);
    if (restore->parsed()) return run_restore(config_path, output, tolerance, max_rate, exec);
    if (fig1->parsed()) return run_fig1(output);
    if (sample->parsed()) {
      if (!noise.empty()) {
        if (const auto env = hm::seed_from_environment()) noise_seed = *env;
        return run_sample_noise(noise[0], noise[1], t_max, steps, realizations, noise_seed, output, exec);
      }
      if (config_path.empty()) throw hm::ConfigError("--config: required unless --noise is given");
      return run_sample_jumps(config_path, output, trajectories, initial, exec);
    }
    if (validate->parsed()) return run_validate(config_path, exec);
  } catch (const hm::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const hm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
