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

#include "hybridmap/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hybridmap {

namespace {

using json = nlohmann::json;

// Cursor into the document that knows its own JSON path.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const json& value() const { return value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(path_ + ": " + what); }

  bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

  Node operator[](const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    if (!value_.contains(key)) throw ConfigError(path_ + "." + key + ": missing required field");
    return Node(value_.at(key), path_ + "." + key);
  }

  Node at(std::size_t i) const { return Node(value_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::size_t array_size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }

  void expect_size(std::size_t n) const {
    if (array_size() != n) {
      fail("expected " + std::to_string(n) + " entries, got " + std::to_string(value_.size()));
    }
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  double nonnegative() const {
    const double v = number();
    if (v < 0.0) fail("expected a nonnegative number");
    return v;
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("expected a positive number");
    return v;
  }

  std::uint64_t unsigned_integer() const {
    if (!value_.is_number_unsigned() && !(value_.is_number_integer() && value_.get<std::int64_t>() >= 0)) {
      fail("expected a nonnegative integer");
    }
    return value_.get<std::uint64_t>();
  }

  std::size_t index(std::size_t bound) const {
    const auto v = unsigned_integer();
    if (v >= bound) fail("index " + std::to_string(v) + " out of range [0, " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(v);
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  Complex complex() const {
    if (value_.is_number()) return {number(), 0.0};
    expect_size(2);
    return {at(0).number(), at(1).number()};
  }

 private:
  const json& value_;
  std::string path_;
};

// Runs `build` and re-labels library validation errors with the JSON path.
template <typename F>
auto at_path(const Node& node, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(node.path() + ": " + e.what());
  }
}

TimeGrid parse_grid(const Node& node) {
  const double t_max = node["t_max"].positive();
  const auto steps = node["steps"].unsigned_integer();
  if (steps == 0) node["steps"].fail("expected a positive integer");
  return TimeGrid(t_max, static_cast<std::size_t>(steps));
}

RealMatrix parse_real_matrix(const Node& node, std::size_t d) {
  node.expect_size(d);
  RealMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const Node row = node.at(i);
    row.expect_size(d);
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row.at(j).number();
    }
  }
  return m;
}

ComplexMatrix parse_complex_matrix(const Node& node, std::size_t d) {
  node.expect_size(d);
  ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const Node row = node.at(i);
    row.expect_size(d);
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row.at(j).complex();
    }
  }
  return m;
}

std::variant<RateKernel, JumpKernel> parse_kernel(const Node& node, std::size_t d,
                                                  const TimeGrid& run_grid) {
  const Node mode_node = node["mode"];
  const std::string mode = mode_node.string();
  if (mode != "rates" && mode != "semi-markov") mode_node.fail("expected \"rates\" or \"semi-markov\"");
  const Node family_node = node["family"];
  const std::string family = family_node.string();
  if (family != "exponential" && family != "tabulated") {
    family_node.fail("expected \"exponential\" or \"tabulated\"");
  }
  const bool rates = mode == "rates";
  const bool tabulated = family == "tabulated";

  RealMatrix delta = RealMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  if (node.has("delta")) {
    if (!rates) node["delta"].fail("instantaneous rates are only meaningful in rates mode");
    delta = parse_real_matrix(node["delta"], d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (i != j && delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) < 0.0) {
          node["delta"].at(i).at(j).fail("expected a nonnegative rate");
        }
      }
    }
  }

  const TimeGrid grid = tabulated && node.has("grid") ? parse_grid(node["grid"]) : run_grid;
  const Node pairs = node["pairs"];
  const std::size_t count = pairs.array_size();

  RealMatrix kappa = RealMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  RealMatrix gamma = RealMatrix::Ones(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  RateKernel::ExpSum terms(d * d);
  std::vector<std::vector<double>> samples(d * d, std::vector<double>(grid.size(), 0.0));
  std::vector<bool> seen(d * d, false);

  for (std::size_t p = 0; p < count; ++p) {
    const Node pair = pairs.at(p);
    const std::size_t to = pair["to"].index(d);
    const std::size_t from = pair["from"].index(d);
    if (to == from) pair["to"].fail("a pair must connect two different levels");
    const std::size_t slot = to * d + from;
    if (tabulated) {
      if (seen[slot]) pair.fail("duplicate pair");
      const Node values = pair["samples"];
      values.expect_size(grid.size());
      for (std::size_t n = 0; n < grid.size(); ++n) samples[slot][n] = values.at(n).number();
    } else {
      const double k = pair["kappa"].nonnegative();
      const double g = pair["gamma"].positive();
      if (rates) {
        terms[slot].push_back({k, g});
      } else {
        if (seen[slot]) pair.fail("duplicate pair; a semi-Markov entry is a single exponential");
        kappa(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = k;
        gamma(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = g;
      }
    }
    seen[slot] = true;
  }

  return at_path(node, [&]() -> std::variant<RateKernel, JumpKernel> {
    if (rates) {
      if (tabulated) return RateKernel::tabulated(delta, grid, std::move(samples));
      return RateKernel::exponential(delta, std::move(terms));
    }
    JumpKernel q = tabulated ? JumpKernel::tabulated(grid, d, std::move(samples))
                             : JumpKernel::exponential(kappa, gamma);
    if (const auto report = validate_jump_kernel(q); !report.accepted) {
      throw ConfigError(node.path() + ": semi-Markov kernel rejected\n" + report.describe());
    }
    return q;
  });
}

DecoherenceModel parse_decoherence(const Node& node, std::size_t d) {
  const Node model_node = node["model"];
  const std::string model = model_node.string();
  DecoherenceModel out = at_path(node, [&] {
    if (model == "gkls") {
      const Node m = node["D"];
      return at_path(m, [&] { return DecoherenceModel::gkls(parse_complex_matrix(m, d)); });
    }
    if (model == "noise") {
      const Node r = node["rates"];
      r.expect_size(d);
      std::vector<double> rates(d);
      for (std::size_t k = 0; k < d; ++k) rates[k] = r.at(k).nonnegative();
      return DecoherenceModel::noise(std::move(rates));
    }
    if (model == "direct") {
      const Node r = node["rates"];
      return at_path(r, [&] { return DecoherenceModel::direct(parse_real_matrix(r, d)); });
    }
    model_node.fail("expected \"gkls\", \"noise\" or \"direct\"");
  });
  if (node.has("uniform_dephasing")) {
    out = out.with_uniform_dephasing(node["uniform_dephasing"].nonnegative());
  }
  return out;
}

VolterraBackend parse_backend(const Node& node) {
  const std::string name = node.string();
  if (name == "automatic") return VolterraBackend::automatic;
  if (name == "quadrature") return VolterraBackend::quadrature;
  if (name == "expsum_embedding") return VolterraBackend::expsum_embedding;
  node.fail("expected \"automatic\", \"quadrature\" or \"expsum_embedding\"");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("$: invalid JSON: ") + e.what());
  }
  const Node root(doc, "$");
  if (!doc.is_object()) root.fail("expected an object");
  static const char* const kKnown[] = {"levels", "energies", "kernel",  "decoherence",
                                       "grid",   "initial_state", "seed", "backend"};
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || item.key() == k;
    if (!known) throw ConfigError("$." + item.key() + ": unknown field");
  }

  const auto levels = root["levels"].unsigned_integer();
  if (levels < 2) root["levels"].fail("expected at least 2 levels");
  const auto d = static_cast<std::size_t>(levels);

  const Node energies_node = root["energies"];
  energies_node.expect_size(d);
  std::vector<double> energies(d);
  for (std::size_t k = 0; k < d; ++k) energies[k] = energies_node.at(k).number();

  const TimeGrid grid = parse_grid(root["grid"]);
  HybridGeneratorSpec spec{std::move(energies), parse_kernel(root["kernel"], d, grid),
                           parse_decoherence(root["decoherence"], d)};
  at_path(root, [&] {
    spec.check();
    return 0;
  });

  std::optional<ComplexMatrix> initial;
  if (root.has("initial_state")) {
    const Node s = root["initial_state"];
    s.expect_size(d * d);
    ComplexMatrix rho(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d * d; ++i) {
      rho(static_cast<Eigen::Index>(i / d), static_cast<Eigen::Index>(i % d)) = s.at(i).complex();
    }
    at_path(s, [&] {
      check_density_matrix(rho, d);
      return 0;
    });
    initial = std::move(rho);
  }

  RunConfig config{std::move(spec), grid, std::move(initial), 0, VolterraBackend::automatic};
  if (root.has("seed")) config.seed = root["seed"].unsigned_integer();
  if (root.has("backend")) config.backend = parse_backend(root["backend"]);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("$: cannot read configuration file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* env = std::getenv("SEED");
  if (env == nullptr) return std::nullopt;
  const std::string value(env);
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("SEED: expected an unsigned integer, got '" + value + "'");
  }
  try {
    return std::stoull(value);
  } catch (const std::out_of_range&) {
    throw ConfigError("SEED: value out of range");
  }
}

void apply_seed_override(RunConfig& config) {
  if (const auto seed = seed_from_environment()) config.seed = *seed;
}

}  // namespace hybridmap
