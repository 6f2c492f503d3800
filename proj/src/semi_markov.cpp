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

#include "hybridmap/semi_markov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridmap/errors.hpp"
#include "hybridmap/kernels.hpp"

namespace hybridmap {

namespace {

constexpr double kMassTolerance = 1e-12;

std::size_t checked_dimension(const RealMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << what << " must be a non-empty square matrix";
    throw InvalidArgument(msg.str());
  }
  if (!m.allFinite()) {
    std::ostringstream msg;
    msg << what << " has non-finite entries";
    throw InvalidArgument(msg.str());
  }
  return static_cast<std::size_t>(m.rows());
}

// Integral of the linear interpolant of samples over [0, t].
double piecewise_linear_integral(const std::vector<double>& samples,
                                 const std::vector<double>& running, const TimeGrid& grid,
                                 double t) {
  if (t <= 0.0) return 0.0;
  if (t >= grid.t_max()) return running.back();
  const double h = grid.step();
  const auto n = std::min(static_cast<std::size_t>(t / h), grid.steps() - 1);
  const double s = t - grid.node(n);
  const double slope = (samples[n + 1] - samples[n]) / h;
  return running[n] + samples[n] * s + 0.5 * slope * s * s;
}

}  // namespace

// ---------------------------------------------------------------------------
// JumpKernel

JumpKernel::JumpKernel(std::size_t d,
                       std::variant<ExponentialJumpFamily, TabulatedJumpFamily> family)
    : dimension_(d), family_(std::move(family)) {
  if (const auto* tab = tabulated_family()) {
    const double h = tab->grid.step();
    cumulative_samples_.resize(tab->samples.size());
    for (std::size_t p = 0; p < tab->samples.size(); ++p) {
      const auto& s = tab->samples[p];
      auto& c = cumulative_samples_[p];
      c.assign(s.size(), 0.0);
      for (std::size_t n = 1; n < s.size(); ++n) c[n] = c[n - 1] + 0.5 * h * (s[n - 1] + s[n]);
    }
  }
}

JumpKernel JumpKernel::exponential(RealMatrix kappa, RealMatrix gamma) {
  const std::size_t d = checked_dimension(kappa, "jump kernel kappa");
  if (checked_dimension(gamma, "jump kernel gamma") != d) {
    throw InvalidArgument("jump kernel kappa and gamma must have the same shape");
  }
  return JumpKernel(d, ExponentialJumpFamily{std::move(kappa), std::move(gamma)});
}

JumpKernel JumpKernel::tabulated(TimeGrid grid, std::size_t dimension,
                                 std::vector<std::vector<double>> samples) {
  if (dimension == 0) throw InvalidArgument("jump kernel dimension must be positive");
  if (samples.size() != dimension * dimension) {
    throw InvalidArgument("tabulated jump kernel needs d*d sample arrays");
  }
  for (const auto& s : samples) {
    if (s.size() != grid.size()) {
      throw InvalidArgument("tabulated jump kernel samples must match the grid node count");
    }
    for (double v : s) {
      if (!std::isfinite(v)) throw InvalidArgument("tabulated jump kernel has non-finite samples");
    }
  }
  return JumpKernel(dimension, TabulatedJumpFamily{grid, std::move(samples)});
}

double JumpKernel::density(std::size_t i, std::size_t j, double t) const {
  if (t < 0.0) return 0.0;
  if (const auto* e = exponential_family()) {
    const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
    const double k = e->kappa(r, c);
    return k == 0.0 ? 0.0 : k * std::exp(-e->gamma(r, c) * t);
  }
  const auto& tab = *tabulated_family();
  const auto& s = tab.samples[i * dimension_ + j];
  if (t > tab.grid.t_max()) return 0.0;
  const double h = tab.grid.step();
  const auto n = std::min(static_cast<std::size_t>(t / h), tab.grid.steps() - 1);
  const double w = (t - tab.grid.node(n)) / h;
  return (1.0 - w) * s[n] + w * s[n + 1];
}

double JumpKernel::cumulative(std::size_t i, std::size_t j, double t) const {
  if (t <= 0.0) return 0.0;
  if (const auto* e = exponential_family()) {
    const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
    const double k = e->kappa(r, c);
    if (k == 0.0) return 0.0;
    const double g = e->gamma(r, c);
    if (g == 0.0) return k * t;
    return k * (-std::expm1(-g * t)) / g;
  }
  const auto& tab = *tabulated_family();
  const std::size_t p = i * dimension_ + j;
  return piecewise_linear_integral(tab.samples[p], cumulative_samples_[p], tab.grid, t);
}

double JumpKernel::column_cumulative(std::size_t j, double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) s += cumulative(i, j, t);
  return s;
}

double JumpKernel::column_mass(std::size_t j) const {
  if (const auto* e = exponential_family()) {
    double m = 0.0;
    const auto c = static_cast<Eigen::Index>(j);
    for (Eigen::Index i = 0; i < e->kappa.rows(); ++i) {
      const double k = e->kappa(i, c);
      if (k != 0.0) m += k / e->gamma(i, c);
    }
    return m;
  }
  double m = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) m += cumulative_samples_[i * dimension_ + j].back();
  return m;
}

bool JumpKernel::is_zero(std::size_t i, std::size_t j) const {
  if (const auto* e = exponential_family()) {
    return e->kappa(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 0.0;
  }
  const auto& s = tabulated_family()->samples[i * dimension_ + j];
  return std::all_of(s.begin(), s.end(), [](double v) { return v == 0.0; });
}

std::vector<double> JumpKernel::sample(std::size_t i, std::size_t j, const TimeGrid& grid) const {
  if (const auto* tab = tabulated_family()) {
    if (!(tab->grid == grid)) {
      throw InvalidArgument("tabulated jump kernel can only be sampled on its own grid");
    }
    return tab->samples[i * dimension_ + j];
  }
  std::vector<double> out(grid.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = density(i, j, grid.node(n));
  return out;
}

bool JumpKernel::has_common_column_decay() const {
  const auto* e = exponential_family();
  if (!e) return false;
  for (Eigen::Index j = 0; j < e->kappa.cols(); ++j) {
    std::optional<double> decay;
    for (Eigen::Index i = 0; i < e->kappa.rows(); ++i) {
      if (e->kappa(i, j) == 0.0) continue;
      if (decay && *decay != e->gamma(i, j)) return false;
      decay = e->gamma(i, j);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation

std::string JumpKernelReport::describe() const {
  if (accepted) return "jump kernel accepted";
  std::ostringstream out;
  out << "jump kernel rejected (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : violations) {
    out << "\n  column " << v.column;
    if (v.row) out << ", row " << *v.row;
    if (v.time) out << ", t = " << *v.time;
    out << ": " << v.reason;
  }
  return out.str();
}

JumpKernelReport validate_jump_kernel(const JumpKernel& q) {
  JumpKernelReport report;
  const std::size_t d = q.dimension();
  auto reject = [&](std::optional<std::size_t> row, std::size_t column,
                    std::optional<double> time, std::string reason) {
    report.accepted = false;
    report.violations.push_back({row, column, time, std::move(reason)});
  };

  if (const auto* e = q.exponential_family()) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        const double k = e->kappa(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const double g = e->gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (k < 0.0) reject(i, j, 0.0, "negative jump density (kappa < 0)");
        if (i == j && k != 0.0) reject(i, j, std::nullopt, "diagonal entry must vanish");
        if (k != 0.0 && !(g > 0.0)) reject(i, j, std::nullopt, "decay rate gamma must be positive");
      }
    }
  } else {
    const auto& tab = *q.tabulated_family();
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        const auto& s = tab.samples[i * d + j];
        for (std::size_t n = 0; n < s.size(); ++n) {
          if (s[n] < 0.0) reject(i, j, tab.grid.node(n), "negative jump density sample");
          if (i == j && s[n] != 0.0) {
            reject(i, j, tab.grid.node(n), "diagonal entry must vanish");
          }
        }
      }
    }
  }

  if (report.accepted) {
    for (std::size_t j = 0; j < d; ++j) {
      const double mass = q.column_mass(j);
      if (!(mass <= 1.0 + kMassTolerance)) {
        std::ostringstream msg;
        msg << "total jump probability " << mass << " exceeds 1";
        reject(std::nullopt, j, std::nullopt, msg.str());
      }
    }
  }
  return report;
}

WaitingTimes survival_and_waiting(const JumpKernel& q, const TimeGrid& grid) {
  const std::size_t d = q.dimension();
  WaitingTimes out;
  out.waiting.assign(d, std::vector<double>(grid.size(), 0.0));
  out.survival.assign(d, std::vector<double>(grid.size(), 1.0));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const double t = grid.node(n);
      double f = 0.0;
      for (std::size_t i = 0; i < d; ++i) f += q.density(i, j, t);
      out.waiting[j][n] = f;
      out.survival[j][n] = 1.0 - q.column_cumulative(j, t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series construction of T

namespace {

// d x d matrix of grid functions with structural-zero flags.
struct GridMatrix {
  std::size_t d = 0;
  std::vector<std::vector<double>> entries;
  std::vector<bool> zero;

  GridMatrix(std::size_t dim, std::size_t nodes)
      : d(dim), entries(dim * dim, std::vector<double>(nodes, 0.0)), zero(dim * dim, true) {}

  double sup() const {
    double s = 0.0;
    for (std::size_t p = 0; p < entries.size(); ++p) {
      if (zero[p]) continue;
      for (double v : entries[p]) s = std::max(s, std::abs(v));
    }
    return s;
  }
};

}  // namespace

SeriesResult build_T_series(const JumpKernel& q, const TimeGrid& grid,
                            const SeriesOptions& options) {
  if (!(options.tolerance > 0.0)) throw InvalidArgument("build_T_series: tolerance must be positive");
  const auto report = validate_jump_kernel(q);
  if (!report.accepted) throw InvalidArgument(report.describe());

  const std::size_t d = q.dimension();
  const std::size_t nodes = grid.size();
  const double h = grid.step();

  GridMatrix kernel(d, nodes);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (q.is_zero(i, j)) continue;
      kernel.entries[i * d + j] = q.sample(i, j, grid);
      kernel.zero[i * d + j] = false;
    }
  }

  // Survival from the trapezoidal integral of the sampled waiting-time
  // density: with this choice the discrete renewal equation conserves
  // column sums exactly, instead of only to O(h^2).
  GridMatrix term(d, nodes);
  for (std::size_t j = 0; j < d; ++j) {
    auto& survival = term.entries[j * d + j];
    double left = 0.0, integral = 0.0;
    for (std::size_t n = 0; n < nodes; ++n) {
      double f = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        if (!kernel.zero[i * d + j]) f += kernel.entries[i * d + j][n];
      }
      if (n > 0) integral += 0.5 * h * (left + f);
      left = f;
      survival[n] = 1.0 - integral;
    }
    term.zero[j * d + j] = false;
  }
  GridMatrix total = term;

  SeriesResult result;
  result.terms = 1;
  result.last_term_norm = term.sup();
  while (result.last_term_norm >= options.tolerance) {
    if (result.terms >= options.max_terms) {
      std::ostringstream msg;
      msg << "build_T_series: no convergence after " << result.terms
          << " terms (last term sup-norm " << result.last_term_norm << ", tolerance "
          << options.tolerance << ")";
      throw NumericalError(msg.str());
    }
    GridMatrix next(d, nodes);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          if (term.zero[i * d + k] || kernel.zero[k * d + j]) continue;
          kernels::trapezoid_convolve_add(term.entries[i * d + k], kernel.entries[k * d + j], h,
                                          next.entries[i * d + j], options.execution);
          next.zero[i * d + j] = false;
        }
      }
    }
    for (std::size_t p = 0; p < d * d; ++p) {
      if (next.zero[p]) continue;
      total.zero[p] = false;
      for (std::size_t n = 0; n < nodes; ++n) total.entries[p][n] += next.entries[p][n];
    }
    term = std::move(next);
    result.last_term_norm = term.sup();
    ++result.terms;
  }

  result.transition.assign(nodes, RealMatrix::Zero(static_cast<Eigen::Index>(d),
                                                   static_cast<Eigen::Index>(d)));
  for (std::size_t n = 0; n < nodes; ++n) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        result.transition[n](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            total.entries[i * d + j][n];
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// RateKernel

RateKernel::RateKernel(RealMatrix delta, std::variant<ExpSum, Tabulated> regular)
    : delta_(std::move(delta)), regular_(std::move(regular)) {
  const std::size_t d = checked_dimension(delta_, "rate kernel delta part");
  delta_.diagonal().setZero();
  if ((delta_.array() < 0.0).any()) {
    throw InvalidArgument("rate kernel delta part must be nonnegative");
  }
  if (auto* terms = std::get_if<ExpSum>(&regular_)) {
    if (terms->size() != d * d) throw InvalidArgument("rate kernel needs d*d exponential term lists");
    for (std::size_t k = 0; k < d; ++k) {
      (*terms)[k * d + k].clear();
    }
    for (const auto& list : *terms) {
      for (const auto& term : list) {
        if (!std::isfinite(term.amplitude) || !std::isfinite(term.decay) || !(term.decay > 0.0)) {
          throw InvalidArgument("rate kernel exponential terms need finite amplitudes and positive decays");
        }
      }
    }
  } else {
    auto& tab = std::get<Tabulated>(regular_);
    if (tab.samples.size() != d * d) throw InvalidArgument("rate kernel needs d*d sample arrays");
    for (std::size_t p = 0; p < tab.samples.size(); ++p) {
      auto& s = tab.samples[p];
      if (s.size() != tab.grid.size()) {
        throw InvalidArgument("rate kernel samples must match the grid node count");
      }
      for (double v : s) {
        if (!std::isfinite(v)) throw InvalidArgument("rate kernel has non-finite samples");
      }
      if (p / d == p % d) std::fill(s.begin(), s.end(), 0.0);
    }
  }
}

RateKernel RateKernel::markov(RealMatrix rates) {
  const auto d = checked_dimension(rates, "rate matrix");
  return RateKernel(std::move(rates), ExpSum(d * d));
}

RateKernel RateKernel::exponential(RealMatrix delta, ExpSum terms) {
  return RateKernel(std::move(delta), std::move(terms));
}

RateKernel RateKernel::tabulated(RealMatrix delta, TimeGrid grid,
                                 std::vector<std::vector<double>> samples) {
  return RateKernel(std::move(delta), Tabulated{grid, std::move(samples)});
}

bool RateKernel::has_regular_part() const {
  if (const auto* terms = expsum()) {
    return std::any_of(terms->begin(), terms->end(), [](const auto& l) { return !l.empty(); });
  }
  for (const auto& s : tabulated_part()->samples) {
    if (std::any_of(s.begin(), s.end(), [](double v) { return v != 0.0; })) return true;
  }
  return false;
}

std::vector<double> RateKernel::regular_samples(std::size_t k, std::size_t l,
                                                const TimeGrid& grid) const {
  const std::size_t d = dimension();
  std::vector<double> out(grid.size(), 0.0);
  if (k == l) return out;
  if (const auto* terms = expsum()) {
    for (const auto& term : (*terms)[k * d + l]) {
      for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] += term.amplitude * std::exp(-term.decay * grid.node(n));
      }
    }
    return out;
  }
  const auto& tab = *tabulated_part();
  if (!(tab.grid == grid)) {
    throw InvalidArgument("tabulated rate kernel can only be sampled on its own grid");
  }
  return tab.samples[k * d + l];
}

Eigen::VectorXd RateKernel::escape_delta() const {
  return delta_.colwise().sum().transpose();  // diagonal already zero
}

std::vector<double> RateKernel::escape_regular(std::size_t k, const TimeGrid& grid) const {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (i == k) continue;
    const auto s = regular_samples(i, k, grid);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += s[n];
  }
  return out;
}

std::vector<ExpTerm> RateKernel::escape_terms(std::size_t k) const {
  const auto* terms = expsum();
  if (!terms) throw InvalidArgument("escape_terms requires an exponential-sum rate kernel");
  std::vector<ExpTerm> out;
  const std::size_t d = dimension();
  for (std::size_t i = 0; i < d; ++i) {
    if (i == k) continue;
    const auto& list = (*terms)[i * d + k];
    out.insert(out.end(), list.begin(), list.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rates from a semi-Markov matrix

namespace {

RateKernel closed_form_rates(const JumpKernel& q) {
  const auto& e = *q.exponential_family();
  const std::size_t d = q.dimension();
  RealMatrix delta = RealMatrix::Zero(e.kappa.rows(), e.kappa.cols());
  RateKernel::ExpSum terms(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    const double total = e.kappa.col(c).sum();
    for (std::size_t i = 0; i < d; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const double k = e.kappa(r, c);
      if (i == j || k == 0.0) continue;
      const double decay = e.gamma(r, c) - total;
      delta(r, c) = k;
      if (decay != 0.0) terms[i * d + j].push_back({-k * decay, decay});
    }
  }
  return RateKernel::exponential(std::move(delta), std::move(terms));
}

// Fastest relative variation of q over the grid, in inverse time units.
double kernel_rate_scale(const JumpKernel& q, const TimeGrid& grid) {
  const std::size_t d = q.dimension();
  double rate = 0.0;
  if (const auto* e = q.exponential_family()) {
    for (Eigen::Index i = 0; i < e->kappa.rows(); ++i) {
      for (Eigen::Index j = 0; j < e->kappa.cols(); ++j) {
        if (e->kappa(i, j) != 0.0) rate = std::max(rate, e->gamma(i, j));
      }
    }
    return rate;
  }
  const double h = grid.step();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto s = q.sample(i, j, grid);
      const double peak = *std::max_element(s.begin(), s.end());
      if (peak <= 0.0) continue;
      double slope = 0.0;
      for (std::size_t n = 1; n < s.size(); ++n) slope = std::max(slope, std::abs(s[n] - s[n - 1]) / h);
      rate = std::max(rate, slope / peak);
    }
  }
  return rate;
}

// Second-order finite-difference derivative of grid samples.
std::vector<double> grid_derivative(const std::vector<double>& s, double h) {
  const std::size_t n = s.size();
  std::vector<double> ds(n, 0.0);
  if (n < 3) {
    if (n == 2) ds[0] = ds[1] = (s[1] - s[0]) / h;
    return ds;
  }
  ds[0] = (-3.0 * s[0] + 4.0 * s[1] - s[2]) / (2.0 * h);
  for (std::size_t k = 1; k + 1 < n; ++k) ds[k] = (s[k + 1] - s[k - 1]) / (2.0 * h);
  ds[n - 1] = (3.0 * s[n - 1] - 4.0 * s[n - 2] + s[n - 3]) / (2.0 * h);
  return ds;
}

RateKernel deconvolved_rates(const JumpKernel& q, const TimeGrid& grid) {
  const std::size_t d = q.dimension();
  const double h = grid.step();
  const double rate = kernel_rate_scale(q, grid);
  if (rate * h > 1.0 / 20.0 + 1e-12) {
    std::ostringstream msg;
    msg << "rates_from_jump_kernel: grid step " << h << " too coarse for kernel rate " << rate
        << " (need h <= " << 1.0 / (20.0 * rate) << ")";
    throw InvalidArgument(msg.str());
  }

  RealMatrix delta = RealMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::vector<std::vector<double>> samples(d * d, std::vector<double>(grid.size(), 0.0));
  const WaitingTimes wt = survival_and_waiting(q, grid);
  const auto* e = q.exponential_family();

  // With W = W0 delta + W_reg, W * g = q differentiates to the second-kind
  // equation W_reg = q' + q(0) f + W_reg * f.
  for (std::size_t j = 0; j < d; ++j) {
    const auto& f = wt.waiting[j];
    const double pivot = 1.0 - 0.5 * h * f[0];
    if (!(pivot >= 0.5)) {
      std::ostringstream msg;
      msg << "rates_from_jump_kernel: deconvolution ill-conditioned for column " << j
          << " (pivot " << pivot << ")";
      throw NumericalError(msg.str());
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (i == j || q.is_zero(i, j)) continue;
      const auto s = q.sample(i, j, grid);
      std::vector<double> ds;
      if (e) {
        const double g = e->gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        ds.resize(s.size());
        for (std::size_t n = 0; n < s.size(); ++n) ds[n] = -g * s[n];
      } else {
        ds = grid_derivative(s, h);
      }
      const double q0 = s[0];
      delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = q0;
      auto& w = samples[i * d + j];
      const double bound = 1e12 * std::max({1.0, std::abs(ds[0]), std::abs(q0 * f[0])});
      w[0] = ds[0] + q0 * f[0];
      for (std::size_t n = 1; n < s.size(); ++n) {
        double acc = 0.5 * w[0] * f[n];
        for (std::size_t m = 1; m < n; ++m) acc += w[m] * f[n - m];
        w[n] = (ds[n] + q0 * f[n] + h * acc) / pivot;
        if (!std::isfinite(w[n]) || std::abs(w[n]) > bound) {
          std::ostringstream msg;
          msg << "rates_from_jump_kernel: deconvolution diverged for pair (" << i << ',' << j
              << ") at t = " << grid.node(n);
          throw NumericalError(msg.str());
        }
      }
    }
  }
  return RateKernel::tabulated(std::move(delta), grid, std::move(samples));
}

}  // namespace

RateKernel rates_from_jump_kernel(const JumpKernel& q, const std::optional<TimeGrid>& grid) {
  const auto report = validate_jump_kernel(q);
  if (!report.accepted) throw InvalidArgument(report.describe());
  if (q.has_common_column_decay()) return closed_form_rates(q);
  if (grid) return deconvolved_rates(q, *grid);
  if (const auto* tab = q.tabulated_family()) return deconvolved_rates(q, tab->grid);
  throw InvalidArgument(
      "rates_from_jump_kernel: exponential kernel without a common decay per column needs a grid");
}

}  // namespace hybridmap
