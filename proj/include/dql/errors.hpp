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

#ifndef DQL_ERRORS_HPP_
#define DQL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dql {

/// Decoding was requested for a plan mode that has no outcome table
/// (exact-unitary completions scramble non-zero outcomes irrecoverably).
struct DecodeModeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A decoded Pauli insertion fails to commute with a downstream operator;
/// carries the offending operator index (1-based) and Pauli label.
struct NotCorrectableError : std::runtime_error {
  NotCorrectableError(int op_index_1based, const std::string& pauli_label)
      : std::runtime_error("insertion " + pauli_label +
                           " does not commute with operator U_" +
                           std::to_string(op_index_1based)),
        op_index(op_index_1based),
        pauli(pauli_label) {}
  int op_index;
  std::string pauli;
};

}  // namespace dql

#endif  // DQL_ERRORS_HPP_
