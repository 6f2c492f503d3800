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

namespace hybridmap {

/// Selects between the serial reference path and the OpenMP path of a
/// data-parallel kernel. Both paths produce bitwise identical results.
enum class Execution { serial, parallel };

/// Number of OpenMP threads available to the parallel path (1 when the
/// library was built without OpenMP).
int max_threads();

}  // namespace hybridmap
