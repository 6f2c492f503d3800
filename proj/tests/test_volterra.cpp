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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "hybridmap/errors.hpp"
#include "hybridmap/volterra.hpp"

using namespace hybridmap;
using Catch::Matchers::WithinAbs;

namespace {

// x' = -k int_0^t exp(-g (t - s)) x(s) ds, x(0) = 1: x'' + g x' + k x = 0
// with x'(0) = 0. Overdamped for g^2 > 4k.
double damped_exact(double k, double g, double t) {
  const double r = std::sqrt(g * g - 4.0 * k);
  const double s1 = 0.5 * (-g + r), s2 = 0.5 * (-g - r);
  return (s1 * std::exp(s2 * t) - s2 * std::exp(s1 * t)) / (s1 - s2);
}

VolterraProblem damped_problem(double k, double g) {
  VolterraProblem p;
  p.regular = std::vector<KernelTerm>{{RealMatrix::Constant(1, 1, -k), g}};
  p.initial = RealMatrix::Ones(1, 1);
  return p;
}

double sup_error(const Trajectory& x, const TimeGrid& grid, double k, double g) {
  double e = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    e = std::max(e, std::abs(x[n](0, 0) - damped_exact(k, g, grid.node(n))));
  }
  return e;
}

}  // namespace

TEST_CASE("local linear problem reduces to the exponential", "[volterra]") {
  VolterraProblem p;
  p.constant = RealMatrix::Constant(1, 1, -0.3);
  p.delta = RealMatrix::Constant(1, 1, -0.2);
  p.initial = RealMatrix::Constant(1, 1, 2.0);
  const TimeGrid grid(3.0, 3000);
  const auto q = solve_quadrature(p, grid);
  const auto e = solve_expsum_embedding(p, grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double exact = 2.0 * std::exp(-0.5 * grid.node(n));
    CHECK_THAT(q[n](0, 0), WithinAbs(exact, 1e-7));
    CHECK_THAT(e[n](0, 0), WithinAbs(exact, 1e-12));
  }
}

TEST_CASE("quadrature is second order, embedding near exact", "[volterra]") {
  const double k = 1.0, g = 5.0;
  const auto p = damped_problem(k, g);
  const TimeGrid coarse(5.0, 1000), fine(5.0, 2000);
  const double e1 = sup_error(solve_quadrature(p, coarse), coarse, k, g);
  const double e2 = sup_error(solve_quadrature(p, fine), fine, k, g);
  CHECK(e1 < 5e-5);
  CHECK_THAT(e1 / e2, WithinAbs(4.0, 0.2));
  CHECK(sup_error(solve_expsum_embedding(p, coarse), coarse, k, g) < 1e-9);
}

TEST_CASE("gridded and exponential kernels give the same quadrature", "[volterra]") {
  const double k = 2.0, g = 6.0;
  const auto p = damped_problem(k, g);
  const TimeGrid grid(2.0, 400);
  VolterraProblem pg = p;
  GriddedKernel gk{grid, {}};
  for (double t : grid.nodes()) gk.samples.push_back(RealMatrix::Constant(1, 1, -k * std::exp(-g * t)));
  pg.regular = gk;
  const auto a = solve_quadrature(p, grid);
  const auto b = solve_quadrature(pg, grid);
  for (std::size_t n = 0; n < grid.size(); ++n) CHECK_THAT(a[n](0, 0), WithinAbs(b[n](0, 0), 1e-15));
}

TEST_CASE("columns evolve independently", "[volterra]") {
  VolterraProblem p;
  RealMatrix amp(2, 2);
  amp << -1.0, 0.5, 1.0, -0.5;
  p.regular = std::vector<KernelTerm>{{amp, 3.0}};
  p.initial = RealMatrix::Identity(2, 2);
  const TimeGrid grid(2.0, 200);
  const auto both = solve_expsum_embedding(p, grid);
  VolterraProblem single = p;
  single.initial = RealMatrix::Identity(2, 2).col(1);
  const auto one = solve_expsum_embedding(single, grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    CHECK_THAT(both[n](0, 1), WithinAbs(one[n](0, 0), 1e-15));
    CHECK_THAT(both[n](1, 1), WithinAbs(one[n](1, 0), 1e-15));
    // Columns of a conservative kernel keep their sums.
    CHECK_THAT(both[n].col(0).sum(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("malformed problems are rejected", "[volterra]") {
  const TimeGrid grid(1.0, 10);
  auto p = damped_problem(1.0, 2.0);
  p.constant = RealMatrix::Zero(2, 2);
  CHECK_THROWS_AS(solve_quadrature(p, grid), InvalidArgument);
  p = damped_problem(1.0, -2.0);
  CHECK_THROWS_AS(solve_quadrature(p, grid), InvalidArgument);
  p = damped_problem(1.0, 2.0);
  p.regular = GriddedKernel{TimeGrid(1.0, 20), std::vector<RealMatrix>(21, RealMatrix::Zero(1, 1))};
  CHECK_THROWS_AS(solve_quadrature(p, grid), InvalidArgument);
  CHECK_THROWS_AS(solve_expsum_embedding(p, grid), InvalidArgument);
}

TEST_CASE("runaway growth is a numerical failure", "[volterra]") {
  VolterraProblem p;
  p.constant = RealMatrix::Constant(1, 1, 20.0);
  p.initial = RealMatrix::Ones(1, 1);
  CHECK_THROWS_AS(solve_quadrature(p, TimeGrid(5.0, 5000)), NumericalError);
}
