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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hybridmap/errors.hpp"
#include "hybridmap/hybrid_map.hpp"

namespace hybridmap {

/// Schema violation in a run configuration. The message starts with the
/// JSON path of the offending value, e.g. "$.kernel.pairs[1].gamma: ...".
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A validated run configuration.
///
///   {
///     "levels": 2,
///     "energies": [0.0, 1.0],
///     "kernel": {
///       "mode": "rates" | "semi-markov",
///       "family": "exponential" | "tabulated",
///       "pairs": [{"to": 0, "from": 1, "kappa": 1.0, "gamma": 5.0}, ...],
///           tabulated pairs carry "samples": [...] instead of kappa/gamma
///       "grid": {"t_max": 5.0, "steps": 500},   tabulated only, default: run grid
///       "delta": [[...], ...]                   rates mode only, optional
///     },
///     "decoherence": {
///       "model": "gkls" | "noise" | "direct",
///       "D": [[...]]  (gkls; entries are numbers or [re, im] pairs)
///       "rates": [...] (noise) or [[...]] (direct),
///       "uniform_dephasing": 0.0                optional
///     },
///     "grid": {"t_max": 5.0, "steps": 5000},
///     "initial_state": [[re, im], ...],         optional, d*d entries row-major
///     "seed": 1,                                optional
///     "backend": "automatic" | "quadrature" | "expsum_embedding"   optional
///   }
struct RunConfig {
  HybridGeneratorSpec spec;
  TimeGrid grid{1.0, 1};
  std::optional<ComplexMatrix> initial_state;
  std::uint64_t seed = 0;
  VolterraBackend backend = VolterraBackend::automatic;
};

/// Parses and validates a configuration; `text` is JSON. Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// The SEED environment variable, if set. Throws ConfigError when it is not
/// an unsigned integer.
std::optional<std::uint64_t> seed_from_environment();

/// Replaces the seed with the SEED environment variable when it is set.
/// Throws ConfigError when SEED is not an unsigned integer.
void apply_seed_override(RunConfig& config);

}  // namespace hybridmap
