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

#include <cstdlib>
#include <string>

#include "hybridmap/config.hpp"

using namespace hybridmap;
using Catch::Matchers::ContainsSubstring;

namespace {

const char* const kBase = R"({
  "levels": 2,
  "energies": [0.0, 1.0],
  "kernel": {"mode": "rates", "family": "exponential",
             "pairs": [{"to": 0, "from": 1, "kappa": 1.0, "gamma": 5.0}]},
  "decoherence": {"model": "noise", "rates": [0.5, 0.5]},
  "grid": {"t_max": 5.0, "steps": 100}
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

void require_error(const std::string& text, const std::string& path) {
  CHECK_THROWS_WITH(parse_config(text), ContainsSubstring(path));
  CHECK_THROWS_AS(parse_config(text), ConfigError);
}

}  // namespace

TEST_CASE("a minimal configuration parses", "[config]") {
  const auto c = parse_config(kBase);
  CHECK(c.spec.dimension() == 2);
  CHECK_FALSE(c.spec.semi_markov_mode());
  CHECK(c.grid == TimeGrid(5.0, 100));
  CHECK(c.seed == 0);
  CHECK(c.backend == VolterraBackend::automatic);
  CHECK_FALSE(c.initial_state.has_value());
  CHECK(c.spec.decoherence.exponent()(0, 1) == Complex(0.5, 0.0));
}

TEST_CASE("schema violations carry the JSON path", "[config]") {
  require_error(replace(kBase, R"("levels": 2)", R"("levels": "two")"), "$.levels");
  require_error(replace(kBase, R"("energies": [0.0, 1.0])", R"("energies": [0.0])"), "$.energies");
  require_error(replace(kBase, R"("gamma": 5.0)", R"("gamma": -5.0)"), "$.kernel.pairs[0].gamma");
  require_error(replace(kBase, R"("from": 1)", R"("from": 4)"), "$.kernel.pairs[0].from");
  require_error(replace(kBase, R"("mode": "rates")", R"("mode": "markov")"), "$.kernel.mode");
  require_error(replace(kBase, R"("model": "noise")", R"("model": "lindblad")"), "$.decoherence.model");
  require_error(replace(kBase, R"("steps": 100)", R"("steps": 0)"), "$.grid.steps");
  require_error(replace(kBase, R"("levels": 2,)", R"("levels": 2, "colour": 1,)"), "$.colour");
  require_error(replace(kBase, R"("grid": {"t_max": 5.0, "steps": 100})", R"("seed": 1)"), "$.grid");
  require_error("{not json", "$");
}

TEST_CASE("library-level validation is reported under the block path", "[config]") {
  auto text = replace(kBase, R"("mode": "rates")", R"("mode": "semi-markov")");
  text = replace(text, R"("kappa": 1.0)", R"("kappa": 10.0)");
  require_error(text, "$.kernel");
  require_error(replace(kBase, R"("model": "noise", "rates": [0.5, 0.5])",
                        R"("model": "gkls", "D": [[1, 2], [2, 1]])"),
                "$.decoherence");
}

TEST_CASE("initial states are validated density matrices", "[config]") {
  const std::string good = replace(kBase, R"("grid")",
                                   R"("initial_state": [[1, 0], [0, 0], [0, 0], [0, 0]], "grid")");
  const auto c = parse_config(good);
  REQUIRE(c.initial_state.has_value());
  CHECK((*c.initial_state)(0, 0) == Complex(1.0, 0.0));
  require_error(replace(kBase, R"("grid")", R"("initial_state": [[2, 0], [0, 0], [0, 0], [0, 0]], "grid")"),
                "$.initial_state");
}

TEST_CASE("tabulated kernels need one sample per node", "[config]") {
  std::string text = replace(kBase, R"("family": "exponential")", R"("family": "tabulated")");
  text = replace(text, R"("kappa": 1.0, "gamma": 5.0)", R"("samples": [0.1, 0.2])");
  text = replace(text, R"("steps": 100)", R"("steps": 1)");
  CHECK_NOTHROW(parse_config(text));
  require_error(replace(text, R"([0.1, 0.2])", R"([0.1])"), "$.kernel.pairs[0].samples");
}

TEST_CASE("the SEED variable overrides the configured seed", "[config]") {
  auto c = parse_config(replace(kBase, R"("levels": 2,)", R"("levels": 2, "seed": 5,)"));
  CHECK(c.seed == 5);
  ::setenv("SEED", "123", 1);
  apply_seed_override(c);
  CHECK(c.seed == 123);
  ::setenv("SEED", "12x", 1);
  CHECK_THROWS_AS(apply_seed_override(c), ConfigError);
  ::unsetenv("SEED");
  apply_seed_override(c);
  CHECK(c.seed == 123);
}
