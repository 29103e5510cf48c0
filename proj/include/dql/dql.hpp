// Copyright 2026 The dql Authors
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
//
// Umbrella header for the dql library.

#ifndef DQL_DQL_HPP_
#define DQL_DQL_HPP_

#include "dql/circuit.hpp"      // IWYU pragma: export
#include "dql/config.hpp"       // IWYU pragma: export
#include "dql/cost_model.hpp"   // IWYU pragma: export
#include "dql/decoding.hpp"     // IWYU pragma: export
#include "dql/errors.hpp"       // IWYU pragma: export
#include "dql/json_io.hpp"      // IWYU pragma: export
#include "dql/linalg.hpp"       // IWYU pragma: export
#include "dql/pauli.hpp"        // IWYU pragma: export
#include "dql/planner.hpp"      // IWYU pragma: export
#include "dql/random.hpp"       // IWYU pragma: export
#include "dql/simulator.hpp"    // IWYU pragma: export
#include "dql/synthesis.hpp"    // IWYU pragma: export
#include "dql/verify.hpp"       // IWYU pragma: export

#endif  // DQL_DQL_HPP_
