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

#include "hybridmap/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridmap/errors.hpp"

namespace hybridmap {

namespace {

constexpr double kGrowthLimit = 1e12;

RealMatrix or_zero(const RealMatrix& m, Eigen::Index size) {
  return m.size() == 0 ? RealMatrix::Zero(size, size) : m;
}

double max_abs(const double* p, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s = std::max(s, std::abs(p[i]));
  return s;
}

}  // namespace

void VolterraProblem::check() const {
  const Eigen::Index m = initial.rows();
  if (m == 0 || initial.cols() == 0) throw InvalidArgument("VolterraProblem: empty initial value");
  auto square = [m](const RealMatrix& a, const char* what) {
    if (a.size() != 0 && (a.rows() != m || a.cols() != m)) {
      std::ostringstream msg;
      msg << "VolterraProblem: " << what << " must be " << m << 'x' << m;
      throw InvalidArgument(msg.str());
    }
  };
  square(constant, "constant part");
  square(delta, "delta part");
  if (const auto* terms = std::get_if<std::vector<KernelTerm>>(&regular)) {
    for (const auto& t : *terms) {
      square(t.amplitude, "kernel amplitude");
      if (t.amplitude.size() == 0) throw InvalidArgument("VolterraProblem: empty kernel amplitude");
      if (!(t.decay > 0.0) || !std::isfinite(t.decay)) {
        throw InvalidArgument("VolterraProblem: exponential kernel decays must be positive");
      }
    }
  } else {
    for (const auto& s : std::get<GriddedKernel>(regular).samples) square(s, "kernel sample");
  }
}

Trajectory solve_quadrature(const VolterraProblem& problem, const TimeGrid& grid) {
  problem.check();
  const auto m = static_cast<std::size_t>(problem.initial.rows());
  const auto c = static_cast<std::size_t>(problem.initial.cols());
  const std::size_t nodes = grid.size();
  const double h = grid.step();
  const auto em = static_cast<Eigen::Index>(m);

  // Row-major copies: kernel[(n * m + i) * m + k], x[(n * m + i) * c + col].
  const RealMatrix local = or_zero(problem.constant, em) + or_zero(problem.delta, em);
  std::vector<double> kernel(nodes * m * m, 0.0);
  if (const auto* terms = std::get_if<std::vector<KernelTerm>>(&problem.regular)) {
    for (std::size_t n = 0; n < nodes; ++n) {
      const double t = grid.node(n);
      for (const auto& term : *terms) {
        const double e = std::exp(-term.decay * t);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t k = 0; k < m; ++k) {
            kernel[(n * m + i) * m + k] +=
                term.amplitude(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * e;
          }
        }
      }
    }
  } else {
    const auto& gk = std::get<GriddedKernel>(problem.regular);
    if (!(gk.grid == grid) || gk.samples.size() != nodes) {
      throw InvalidArgument("solve_quadrature: gridded kernel must be sampled on the solve grid");
    }
    for (std::size_t n = 0; n < nodes; ++n) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
          kernel[(n * m + i) * m + k] =
              gk.samples[n](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        }
      }
    }
  }
  std::vector<double> lflat(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      lflat[i * m + k] = local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
  }

  const std::size_t block = m * c;
  std::vector<double> x(nodes * block, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t col = 0; col < c; ++col) {
      x[i * c + col] = problem.initial(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col));
    }
  }
  const double limit = kGrowthLimit * std::max(max_abs(x.data(), block), 1e-300);

  // out += a * (K x) for an m x m block K and an m x c block x.
  auto gemm_add = [m, c](const double* k, const double* xs, double a, double* out) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double kij = a * k[i * m + j];
        if (kij == 0.0) continue;
        for (std::size_t col = 0; col < c; ++col) out[i * c + col] += kij * xs[j * c + col];
      }
    }
  };

  std::vector<double> f_now(block, 0.0), part(block), xp(block), fp(block), f_next(block);
  gemm_add(lflat.data(), x.data(), 1.0, f_now.data());

  for (std::size_t n = 0; n + 1 < nodes; ++n) {
    const double* xn = &x[n * block];
    double* xnext = &x[(n + 1) * block];

    // Convolution history for node n+1 without the unknown endpoint.
    std::fill(part.begin(), part.end(), 0.0);
    gemm_add(&kernel[(n + 1) * m * m], &x[0], 0.5, part.data());
    for (std::size_t j = 1; j <= n; ++j) {
      gemm_add(&kernel[(n + 1 - j) * m * m], &x[j * block], 1.0, part.data());
    }

    for (std::size_t p = 0; p < block; ++p) xp[p] = xn[p] + h * f_now[p];
    std::fill(fp.begin(), fp.end(), 0.0);
    gemm_add(lflat.data(), xp.data(), 1.0, fp.data());
    gemm_add(&kernel[0], xp.data(), 0.5 * h, fp.data());
    for (std::size_t p = 0; p < block; ++p) fp[p] += h * part[p];

    for (std::size_t p = 0; p < block; ++p) xnext[p] = xn[p] + 0.5 * h * (f_now[p] + fp[p]);

    std::fill(f_next.begin(), f_next.end(), 0.0);
    gemm_add(lflat.data(), xnext, 1.0, f_next.data());
    gemm_add(&kernel[0], xnext, 0.5 * h, f_next.data());
    for (std::size_t p = 0; p < block; ++p) f_next[p] += h * part[p];
    std::swap(f_now, f_next);

    const double size = max_abs(xnext, block);
    if (!std::isfinite(size) || size > limit) {
      std::ostringstream msg;
      msg << "solve_quadrature: unstable step at t = " << grid.node(n + 1) << " (|x| = " << size
          << ")";
      throw NumericalError(msg.str());
    }
  }

  Trajectory out(nodes, RealMatrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)));
  for (std::size_t n = 0; n < nodes; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t col = 0; col < c; ++col) {
        out[n](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) =
            x[n * block + i * c + col];
      }
    }
  }
  return out;
}

Trajectory solve_expsum_embedding(const VolterraProblem& problem, const TimeGrid& grid) {
  problem.check();
  const auto* terms = std::get_if<std::vector<KernelTerm>>(&problem.regular);
  if (!terms) throw InvalidArgument("solve_expsum_embedding requires an exponential-sum kernel");

  const Eigen::Index m = problem.initial.rows();
  const auto r = static_cast<Eigen::Index>(terms->size());
  const Eigen::Index size = m * (1 + r);

  // z = (x, y_1, ..., y_R) with y_r' = -decay_r y_r + x.
  RealMatrix gen = RealMatrix::Zero(size, size);
  gen.topLeftCorner(m, m) = or_zero(problem.constant, m) + or_zero(problem.delta, m);
  for (Eigen::Index k = 0; k < r; ++k) {
    const auto& term = (*terms)[static_cast<std::size_t>(k)];
    gen.block(0, m * (k + 1), m, m) = term.amplitude;
    gen.block(m * (k + 1), 0, m, m) = RealMatrix::Identity(m, m);
    gen.block(m * (k + 1), m * (k + 1), m, m) = -term.decay * RealMatrix::Identity(m, m);
  }

  // Classical RK4 applied to a constant linear system is the degree-4
  // Taylor polynomial of exp(h M).
  const RealMatrix hm = grid.step() * gen;
  RealMatrix step = RealMatrix::Identity(size, size);
  RealMatrix power = RealMatrix::Identity(size, size);
  double factorial = 1.0;
  for (int k = 1; k <= 4; ++k) {
    power = power * hm;
    factorial *= k;
    step += power / factorial;
  }

  RealMatrix z = RealMatrix::Zero(size, problem.initial.cols());
  z.topRows(m) = problem.initial;
  Trajectory out;
  out.reserve(grid.size());
  out.push_back(problem.initial);
  for (std::size_t n = 1; n < grid.size(); ++n) {
    z = step * z;
    out.push_back(z.topRows(m));
  }
  return out;
}

}  // namespace hybridmap
