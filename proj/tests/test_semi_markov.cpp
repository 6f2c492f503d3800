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
#include "hybridmap/hybrid_map.hpp"
#include "hybridmap/semi_markov.hpp"
#include "oracles/frozen.hpp"

using namespace hybridmap;
using Catch::Matchers::WithinAbs;

namespace {

JumpKernel reference_kernel() {
  RealMatrix kappa(2, 2), gamma(2, 2);
  kappa << 0.0, 1.0, 3.0, 0.0;
  gamma << 5.0, 5.0, 5.0, 5.0;
  return JumpKernel::exponential(kappa, gamma);
}

// Three states; column 0 mixes two decay rates, so no closed form applies.
JumpKernel mixed_kernel() {
  RealMatrix kappa(3, 3), gamma(3, 3);
  kappa << 0.0, 0.5, 0.2, 1.0, 0.0, 0.3, 0.6, 0.4, 0.0;
  gamma << 1.0, 2.0, 1.5, 3.0, 1.0, 1.0, 2.0, 2.0, 1.0;
  return JumpKernel::exponential(kappa, gamma);
}

}  // namespace

TEST_CASE("jump kernel validation names the violated condition", "[semi_markov]") {
  CHECK(validate_jump_kernel(reference_kernel()).accepted);

  RealMatrix kappa(2, 2), gamma = RealMatrix::Ones(2, 2);
  kappa << 0.0, -0.1, 0.5, 0.0;
  auto report = validate_jump_kernel(JumpKernel::exponential(kappa, gamma));
  REQUIRE_FALSE(report.accepted);
  CHECK(report.violations.front().row == std::optional<std::size_t>(0));
  CHECK(report.violations.front().column == 1);

  kappa << 0.2, 0.1, 0.5, 0.0;
  CHECK_FALSE(validate_jump_kernel(JumpKernel::exponential(kappa, gamma)).accepted);

  kappa << 0.0, 0.1, 1.5, 0.0;  // column 0 carries probability 1.5
  report = validate_jump_kernel(JumpKernel::exponential(kappa, gamma));
  REQUIRE_FALSE(report.accepted);
  CHECK_FALSE(report.violations.front().row.has_value());
  CHECK(report.violations.front().column == 0);
  CHECK_FALSE(report.describe().empty());
}

TEST_CASE("survival of a single exponential channel", "[semi_markov]") {
  const auto q = reference_kernel();
  const TimeGrid grid(2.0, 20);
  const auto wt = survival_and_waiting(q, grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double t = grid.node(n);
    CHECK_THAT(wt.survival[0][n], WithinAbs(1.0 - 3.0 * (1.0 - std::exp(-5.0 * t)) / 5.0, 1e-15));
    CHECK_THAT(wt.waiting[1][n], WithinAbs(std::exp(-5.0 * t), 1e-15));
  }
  CHECK_THAT(q.column_mass(0), WithinAbs(0.6, 1e-15));
}

TEST_CASE("renewal series without jumps is the identity", "[semi_markov]") {
  const auto q = JumpKernel::exponential(RealMatrix::Zero(3, 3), RealMatrix::Ones(3, 3));
  const auto res = build_T_series(q, TimeGrid(1.0, 10));
  for (const auto& t : res.transition) CHECK(t == RealMatrix::Identity(3, 3));
}

TEST_CASE("renewal series matches the Laplace-domain reference", "[semi_markov]") {
  const TimeGrid grid(5.0, 5000);
  const auto res = build_T_series(reference_kernel(), grid);
  for (const auto& ref : oracles::kReferenceRenewal) {
    const auto n = static_cast<std::size_t>(std::lround(ref.t / grid.step()));
    for (Eigen::Index p = 0; p < 4; ++p) {
      CHECK_THAT(res.transition[n](p / 2, p % 2),
                 WithinAbs(ref.t_row_major[static_cast<std::size_t>(p)], 3e-6));
    }
  }
  for (const auto& t : res.transition) {
    CHECK_THAT((t.colwise().sum().array() - 1.0).abs().maxCoeff(), WithinAbs(0.0, 1e-10));
    CHECK(t.minCoeff() >= 0.0);
  }
}

TEST_CASE("renewal series reports non-convergence", "[semi_markov]") {
  SeriesOptions opts;
  opts.max_terms = 3;
  CHECK_THROWS_AS(build_T_series(reference_kernel(), TimeGrid(5.0, 500), opts), NumericalError);
  RealMatrix kappa(2, 2);
  kappa << 0.0, 0.1, 1.5, 0.0;
  CHECK_THROWS_AS(build_T_series(JumpKernel::exponential(kappa, RealMatrix::Ones(2, 2)),
                                 TimeGrid(1.0, 10)),
                  InvalidArgument);
}

TEST_CASE("closed-form rates for a common decay per column", "[semi_markov]") {
  const auto w = rates_from_jump_kernel(reference_kernel());
  REQUIRE(w.is_expsum());
  CHECK(w.delta()(0, 1) == 1.0);
  CHECK(w.delta()(1, 0) == 3.0);
  const auto& t01 = (*w.expsum())[0 * 2 + 1];
  REQUIRE(t01.size() == 1);
  CHECK(t01[0].decay == 4.0);      // gamma - kappa_1
  CHECK(t01[0].amplitude == -4.0);  // -kappa (gamma - kappa_1)
  const auto& t10 = (*w.expsum())[1 * 2 + 0];
  CHECK(t10[0].decay == 2.0);
  CHECK(t10[0].amplitude == -6.0);
}

TEST_CASE("exponential waiting times give Markov rates", "[semi_markov]") {
  // q_ij = r_ij exp(-R_j t) with R_j = sum_i r_ij is a Markov chain.
  RealMatrix r(2, 2), gamma(2, 2);
  r << 0.0, 0.4, 1.2, 0.0;
  gamma << 1.2, 0.4, 1.2, 0.4;
  const auto w = rates_from_jump_kernel(JumpKernel::exponential(r, gamma));
  CHECK(w.delta() == r);
  CHECK_FALSE(w.has_regular_part());
}

TEST_CASE("deconvolved rates reproduce the renewal series", "[semi_markov]") {
  const auto q = mixed_kernel();
  REQUIRE_FALSE(q.has_common_column_decay());
  const TimeGrid grid(4.0, 4000);
  const auto w = rates_from_jump_kernel(q, grid);
  CHECK_FALSE(w.is_expsum());
  const auto series = build_T_series(q, grid).transition;
  const HybridGeneratorSpec spec{{0.0, 1.0, 2.0}, w, DecoherenceModel::none(3)};
  const auto volterra = population_trajectory(spec, grid);
  double err = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    err = std::max(err, (series[n] - volterra[n]).cwiseAbs().maxCoeff());
  }
  CHECK(err < 1e-5);
}

TEST_CASE("deconvolution needs a grid fine enough for the kernel", "[semi_markov]") {
  CHECK_THROWS_AS(rates_from_jump_kernel(mixed_kernel()), InvalidArgument);
  CHECK_THROWS_AS(rates_from_jump_kernel(mixed_kernel(), TimeGrid(4.0, 40)), InvalidArgument);
}

TEST_CASE("tabulated kernels interpolate and integrate linearly", "[semi_markov]") {
  const TimeGrid grid(1.0, 4);
  std::vector<std::vector<double>> s(4, std::vector<double>(5, 0.0));
  s[1] = {0.0, 0.25, 0.5, 0.75, 1.0};  // q_01(t) = t
  const auto q = JumpKernel::tabulated(grid, 2, s);
  CHECK_THAT(q.density(0, 1, 0.3), WithinAbs(0.3, 1e-15));
  CHECK_THAT(q.cumulative(0, 1, 0.6), WithinAbs(0.18, 1e-15));
  CHECK(q.density(0, 1, 1.5) == 0.0);
  CHECK_THAT(q.column_mass(1), WithinAbs(0.5, 1e-15));
  CHECK(q.is_zero(1, 0));
  CHECK_THROWS_AS(q.sample(0, 1, TimeGrid(1.0, 8)), InvalidArgument);
}
