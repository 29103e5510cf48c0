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

#ifndef DQL_COST_MODEL_HPP_
#define DQL_COST_MODEL_HPP_

#include <algorithm>
#include <cstdint>

#include "dql/circuit.hpp"

namespace dql {

struct CostEstimate {
  long long gates = 0;
  long long depth = 0;
  int helper_ancillas = 0;
};

/**
 * Translates IR primitives into elementary-gate (one- and two-qubit) counts.
 *
 * The numbers are a configurable planning heuristic, not a compiler:
 *  - ControlledHadamard expands to Ry, CZ, Ry (3 gates);
 *  - CCX uses the standard 6-CX decomposition (15 gates, depth 11);
 *  - a k-qubit multi-controlled Z (k >= 3) is charged
 *    mcz_quadratic * (k-1)^2 gates and one borrowed helper ancilla,
 *    reflecting the usual quadratic ancilla-assisted construction;
 *  - DiagonalUnitary on k qubits is charged per entry (~2^k);
 *  - GenericUnitary on k qubits is charged 4^k, a deliberate coarse bound.
 *
 * Helper ancillas are accounted per gate (no sharing assumed) and are never
 * allocated in simulated circuits, where these primitives are exact.
 */
struct CostModel {
  long long single_gates = 1, single_depth = 1;
  long long cx_gates = 1, cx_depth = 1;
  long long swap_gates = 3, swap_depth = 3;
  long long ch_gates = 3, ch_depth = 3;
  long long ccx_gates = 15, ccx_depth = 11;
  long long mcz_quadratic = 16;
  long long diagonal_per_entry = 1;

  CostEstimate mcz_cost(int total_mcz_qubits) const {
    const int k = total_mcz_qubits;
    if (k <= 1) return {3, 3, 0};  // X Z X
    if (k == 2) return {cx_gates + 2 * single_gates, cx_depth + 2 * single_depth, 0};
    const long long g = mcz_quadratic * (k - 1) * (k - 1);
    return {g, g, 1};
  }

  CostEstimate gate_cost(const GateOp& op) const {
    const int extra = static_cast<int>(op.controls.size());
    switch (op.kind) {
      case GateKind::Hadamard:
      case GateKind::PauliX:
      case GateKind::PauliZ:
        if (extra == 0) return {single_gates, single_depth, 0};
        if (extra == 1)
          return op.kind == GateKind::Hadamard
                     ? CostEstimate{ch_gates, ch_depth, 0}
                     : CostEstimate{cx_gates, cx_depth, 0};
        if (extra == 2 && op.kind == GateKind::PauliX)
          return {ccx_gates, ccx_depth, 0};
        return mcz_cost(extra + 1);
      case GateKind::CX:
      case GateKind::CZ:
        return {cx_gates, cx_depth, 0};
      case GateKind::ControlledHadamard:
        return {ch_gates, ch_depth, 0};
      case GateKind::CCX:
        return {ccx_gates, ccx_depth, 0};
      case GateKind::MultiControlledZ0:
        return mcz_cost(extra + 1);
      case GateKind::Swap:
        return {swap_gates, swap_depth, 0};
      case GateKind::RegisterSwap: {
        const long long pairs = static_cast<long long>(op.targets.size()) / 2;
        return {pairs * swap_gates, swap_depth, 0};
      }
      case GateKind::DiagonalUnitary: {
        const long long entries = 1ll << (op.targets.size() + extra);
        return {diagonal_per_entry * entries, diagonal_per_entry * entries, 0};
      }
      case GateKind::GenericUnitary: {
        const long long dim2 = 1ll << (2 * (op.targets.size() + extra));
        return {dim2, dim2, 0};
      }
    }
    return {};
  }

  /**
   * Whole-circuit estimate: gates and helpers are summed; elementary depth
   * composes layer-by-layer (IR layers from the greedy layering, each layer
   * contributing the largest elementary depth among its gates).
   */
  CostEstimate estimate(const Circuit& c) const {
    CostEstimate total;
    const std::vector<int> layers = layer_assignment(c);
    int max_layer = 0;
    for (int l : layers) max_layer = std::max(max_layer, l);
    std::vector<long long> layer_depth(max_layer + 1, 0);
    for (std::size_t i = 0; i < c.ops.size(); ++i) {
      const CostEstimate g = gate_cost(c.ops[i]);
      total.gates += g.gates;
      total.helper_ancillas += g.helper_ancillas;
      layer_depth[layers[i]] = std::max(layer_depth[layers[i]], g.depth);
    }
    for (long long d : layer_depth) total.depth += d;
    return total;
  }
};

}  // namespace dql

#endif  // DQL_COST_MODEL_HPP_
