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
// Planner: turns a sequence of unitaries U_1 ... U_M and a target vector v
// into a wide, shallow circuit whose post-selected output register carries
// U_1 U_2 ... U_M v (U_M hits v first; the product is written left to
// right).
//
// Pipeline:
//   1. prep           every register pair is put into vec(I)/sqrt(N)
//   2. vectorization  pair i becomes vec((U_{2i-1} U_{2i})^T) by applying
//                     U_{2i-1} to the column register and U_{2i}^T to the
//                     row register
//   3. gathering      a balanced tree of gathering blocks contracts
//                     neighbouring pairs into the vectorization of their
//                     operator product; contracted ("spent") registers are
//                     post-selected to zero
//   4. multiplication the multiplier operator turns the surviving pair into
//                     the matrix-vector product on the output register
//
// Scheduling: the M/2 pairs are split into maximal power-of-two groups,
// largest first.  Each group is gathered by a perfect binary tree; the group
// results are then chained together smallest-first, which lets every chain
// block start as early as its operands allow.  This meets the depth target
// of ceil(log2 M) - 1 gathering layers with exactly M/2 - 1 blocks.

#ifndef DQL_PLANNER_HPP_
#define DQL_PLANNER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dql/circuit.hpp"
#include "dql/cost_model.hpp"
#include "dql/linalg.hpp"
#include "dql/synthesis.hpp"

namespace dql {

/// Smallest k with 2^k >= m (m >= 1).
inline int ceil_log2(int m) {
  int k = 0;
  while ((1 << k) < m) ++k;
  return k;
}

/// Problem instance: qubit count per operator, the operator sequence, and
/// the target vector.  The reference output is
///   target = ops[0] * ops[1] * ... * ops[M-1] * v
/// (the last listed operator is applied to v first).
struct Problem {
  int n = 1;
  std::vector<ComplexMatrix> ops;
  ComplexVector v;
};

/// Reference output the plan must reproduce on its kept branch (unit norm).
inline ComplexVector target_state(const Problem& p) {
  ComplexVector t = p.v.normalized();
  for (std::size_t i = p.ops.size(); i-- > 0;) t = p.ops[i] * t;
  return t;
}

inline void validate_problem(const Problem& p, double unitary_tol = 1e-8) {
  if (p.n < 1 || p.n > 16) {
    throw std::invalid_argument("problem needs between 1 and 16 qubits per "
                                "operator");
  }
  const std::size_t dim = std::size_t{1} << p.n;
  if (p.ops.empty()) {
    throw std::invalid_argument("problem needs at least one operator");
  }
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    if (p.ops[i].rows() != dim || p.ops[i].cols() != dim) {
      throw std::invalid_argument("operator " + std::to_string(i + 1) +
                                  " does not match the problem dimension");
    }
    if (!p.ops[i].is_unitary(unitary_tol)) {
      throw std::invalid_argument("operator " + std::to_string(i + 1) +
                                  " is not unitary within tolerance");
    }
  }
  if (p.v.size() != dim) {
    throw std::invalid_argument("target vector does not match the problem "
                                "dimension");
  }
  if (p.v.norm() < 1e-12) {
    throw std::invalid_argument("target vector must be nonzero");
  }
}

struct PlanOptions {
  SynthesisMode mode = SynthesisMode::ExactUnitary;
  /// When true each gathering block ends with a register swap that moves its
  /// result onto the block's left pair, so the output register is register 0
  /// and spent pairs sit where the right operand lived.  When false the
  /// swaps are elided; the kept output is identical, only the register
  /// bookkeeping changes.
  bool include_register_swaps = true;
  double unitary_tol = 1e-8;
};

/// One gathering block in the schedule.  Operator ranges are 1-based and
/// inclusive; the block contracts U_{left_lo..left_hi} (left pair) with
/// U_{right_lo..right_hi} (right pair).  `seam` = left_hi: a decoded Pauli
/// insertion from this block sits between U_seam and U_{seam+1}.
struct GatherBlock {
  int id = 0;          // creation order, 0-based
  int layer = 0;       // 1-based gathering layer
  std::string role;    // "subtree-<ops>" or "combining"
  int left_lo = 0, left_hi = 0, right_lo = 0, right_hi = 0;
  int seam = 0;
  int reg_one = 0;     // registers the gathering operator acts on
  int reg_two = 0;
  int swap_a = -1, swap_b = -1;        // register swap (-1: elided)
  int result_col = 0, result_row = 0;  // surviving pair after the block
  int spent_a = 0, spent_b = 0;        // post-selected-to-zero registers
  int ancilla = -1;                    // LCU flag qubit (-1 in exact mode)
};

/// The final multiplication stage.
struct MultiplierBlock {
  int operand_reg = 0;  // row register the multiplier acts on
  int output_reg = 0;   // column register carrying the result
  int ancilla = -1;     // LCU flag qubit (-1 in exact mode)
  double lambda_max = 1.0;
};

/// Structural and cost accounting for a plan.
struct PlanLedger {
  int n = 0;
  int m_original = 0;
  int m_padded = 0;
  int lanes = 0;
  int gu_count = 0;
  int vu_count = 1;
  int combining_blocks = 0;
  int gathering_layers = 0;
  int prep_depth = 0;
  int d_u = 0;  // vectorization stage depth (prep accounted separately)
  int d_g = 0;  // depth of one gathering layer
  int d_v = 0;  // multiplication stage depth
  int block_depth = 0;  // d_u + (ceil(log2 M) - 1) d_g + d_v
  int sequential_block_depth = 0;  // the M sequential applications replaced
  int register_qubit_count = 0;
  int ancilla_count = 0;
  int total_qubits = 0;
  long long cost_gates = 0;
  int cost_depth = 0;
  int helper_ancillas = 0;
  double lambda_max = 1.0;
  double expected_branch_scale = 0.0;
  double expected_success_probability = 0.0;
};

struct Plan {
  Problem problem;  // normalized target vector, padded operator list
  PlanOptions options;
  int m_original = 0;
  RegisterLayout layout;

  Circuit prep;
  Circuit vectorization;
  std::vector<Circuit> gathering;  // one circuit per layer
  Circuit multiplication;

  std::vector<GatherBlock> blocks;
  MultiplierBlock multiplier;
  int output_register = 0;

  PlanLedger ledger;

  /// Whole pipeline as one circuit (stages concatenated in order).
  Circuit full_circuit() const {
    Circuit c{layout};
    c.append_all(prep);
    c.append_all(vectorization);
    for (const Circuit& g : gathering) c.append_all(g);
    c.append_all(multiplication);
    return c;
  }

  /// Qubits that must read zero on the kept branch, in decode order: for
  /// each block its spent pair (then its flag ancilla), then the multiplier
  /// operand register (then its flag ancilla).
  std::vector<int> postselect_qubits() const {
    std::vector<int> q;
    for (const GatherBlock& b : blocks) {
      for (int x : layout.register_qubits(b.spent_a)) q.push_back(x);
      for (int x : layout.register_qubits(b.spent_b)) q.push_back(x);
      if (b.ancilla >= 0) q.push_back(b.ancilla);
    }
    for (int x : layout.register_qubits(multiplier.operand_reg))
      q.push_back(x);
    if (multiplier.ancilla >= 0) q.push_back(multiplier.ancilla);
    return q;
  }

  std::vector<int> output_qubits() const {
    return layout.register_qubits(output_register);
  }
};

namespace detail {

struct LaneState {
  int col_reg = 0, row_reg = 0;
  int lo = 0, hi = 0;   // 1-based operator range held by this lane
  int ready_layer = 0;  // layer after which the lane's value is available
};

/// Records one merge; fills everything except the ancilla.
inline LaneState merge_lanes(std::vector<GatherBlock>& blocks,
                             const LaneState& left, const LaneState& right,
                             const std::string& role, bool with_swap) {
  if (left.hi + 1 != right.lo) {
    throw std::logic_error("gathering schedule lost operator contiguity");
  }
  GatherBlock b;
  b.id = static_cast<int>(blocks.size());
  b.layer = std::max(left.ready_layer, right.ready_layer) + 1;
  b.role = role;
  b.left_lo = left.lo;
  b.left_hi = left.hi;
  b.right_lo = right.lo;
  b.right_hi = right.hi;
  b.seam = left.hi;
  b.reg_one = left.row_reg;
  b.reg_two = right.col_reg;
  LaneState merged;
  merged.lo = left.lo;
  merged.hi = right.hi;
  merged.ready_layer = b.layer;
  merged.col_reg = left.col_reg;
  if (with_swap) {
    b.swap_a = left.row_reg;
    b.swap_b = right.row_reg;
    merged.row_reg = left.row_reg;
    b.spent_a = right.col_reg;
    b.spent_b = right.row_reg;
  } else {
    merged.row_reg = right.row_reg;
    b.spent_a = left.row_reg;
    b.spent_b = right.col_reg;
  }
  b.result_col = merged.col_reg;
  b.result_row = merged.row_reg;
  blocks.push_back(b);
  return merged;
}

}  // namespace detail

inline Plan make_plan(const Problem& problem, const PlanOptions& options) {
  validate_problem(problem, options.unitary_tol);

  Plan plan;
  plan.options = options;
  plan.problem = problem;
  plan.problem.v = problem.v.normalized();
  plan.m_original = static_cast<int>(problem.ops.size());
  if (options.mode == SynthesisMode::PauliLcu) {
    for (std::size_t j = 0; j < plan.problem.v.size(); ++j) {
      if (std::abs(plan.problem.v[j].imag()) > 1e-12) {
        throw std::invalid_argument("Pauli-LCU plans require a real target "
                                    "vector");
      }
    }
  }

  const int n = problem.n;
  const std::size_t dim = std::size_t{1} << n;
  if (plan.problem.ops.size() % 2 != 0) {
    plan.problem.ops.push_back(ComplexMatrix::identity(dim));
  }
  const int m = static_cast<int>(plan.problem.ops.size());
  const int lanes = m / 2;

  // --- schedule ------------------------------------------------------------
  std::vector<detail::LaneState> lane(lanes);
  for (int i = 0; i < lanes; ++i) {
    lane[i] = {2 * i, 2 * i + 1, 2 * i + 1, 2 * i + 2, 0};
  }

  const bool swaps = options.include_register_swaps;
  std::vector<detail::LaneState> roots;
  int offset = 0;
  while (offset < lanes) {
    int group = 1;
    while (2 * group <= lanes - offset) group *= 2;
    std::vector<detail::LaneState> level(lane.begin() + offset,
                                         lane.begin() + offset + group);
    const std::string role = "subtree-" + std::to_string(2 * group);
    while (level.size() > 1) {
      std::vector<detail::LaneState> next;
      for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
        next.push_back(detail::merge_lanes(plan.blocks, level[i],
                                           level[i + 1], role, swaps));
      }
      level = std::move(next);
    }
    roots.push_back(level[0]);
    offset += group;
  }
  detail::LaneState chain = roots.back();
  for (std::size_t i = roots.size() - 1; i-- > 0;) {
    chain = detail::merge_lanes(plan.blocks, roots[i], chain, "combining",
                                swaps);
  }
  const detail::LaneState final_lane = chain;

  // --- layout and ancillas ---------------------------------------------------
  plan.layout = RegisterLayout{n, m, {}};
  if (options.mode == SynthesisMode::PauliLcu) {
    for (GatherBlock& b : plan.blocks) {
      b.ancilla = plan.layout.add_ancilla(AncillaPurpose::LcuGather);
    }
    plan.multiplier.ancilla =
        plan.layout.add_ancilla(AncillaPurpose::LcuMultiplier);
  }
  plan.multiplier.operand_reg = final_lane.row_reg;
  plan.multiplier.output_reg = final_lane.col_reg;
  plan.multiplier.lambda_max =
      options.mode == SynthesisMode::PauliLcu
          ? multiplier_lambda_max(plan.problem.v)
          : 1.0;
  plan.output_register = final_lane.col_reg;

  // --- stage circuits --------------------------------------------------------
  plan.prep = Circuit{plan.layout};
  for (int i = 0; i < lanes; ++i) {
    append_pair_prep_ops(plan.prep, plan.layout.register_qubits(2 * i),
                         plan.layout.register_qubits(2 * i + 1));
  }

  plan.vectorization = Circuit{plan.layout};
  for (int i = 0; i < lanes; ++i) {
    plan.vectorization.append(GateOp::generic_unitary(
        plan.layout.register_qubits(2 * i), plan.problem.ops[2 * i]));
    plan.vectorization.append(GateOp::generic_unitary(
        plan.layout.register_qubits(2 * i + 1),
        plan.problem.ops[2 * i + 1].transpose()));
  }

  int layers = 0;
  for (const GatherBlock& b : plan.blocks) layers = std::max(layers, b.layer);
  plan.gathering.assign(layers, Circuit{plan.layout});
  ComplexMatrix gathering_exact;  // shared by every exact-mode block
  if (options.mode == SynthesisMode::ExactUnitary && !plan.blocks.empty()) {
    gathering_exact = gathering_dense(n, SynthesisMode::ExactUnitary);
  }
  for (const GatherBlock& b : plan.blocks) {
    Circuit& layer = plan.gathering[b.layer - 1];
    const std::vector<int> one = plan.layout.register_qubits(b.reg_one);
    const std::vector<int> two = plan.layout.register_qubits(b.reg_two);
    if (options.mode == SynthesisMode::ExactUnitary) {
      std::vector<int> both = one;
      both.insert(both.end(), two.begin(), two.end());
      layer.append(GateOp::generic_unitary(both, gathering_exact));
    } else {
      append_gathering_lcu_ops(layer, one, two, b.ancilla);
    }
    if (b.swap_a >= 0) {
      layer.append(
          GateOp::register_swap(plan.layout.register_qubits(b.swap_a),
                                plan.layout.register_qubits(b.swap_b)));
    }
  }

  plan.multiplication = Circuit{plan.layout};
  {
    const std::vector<int> reg =
        plan.layout.register_qubits(plan.multiplier.operand_reg);
    if (options.mode == SynthesisMode::ExactUnitary) {
      plan.multiplication.append(GateOp::generic_unitary(
          reg, multiplier_dense(plan.problem.v, SynthesisMode::ExactUnitary)));
    } else {
      append_multiplier_lcu_ops(plan.multiplication, reg,
                                plan.multiplier.ancilla, plan.problem.v);
    }
  }

  // --- ledger ----------------------------------------------------------------
  PlanLedger& led = plan.ledger;
  led.n = n;
  led.m_original = plan.m_original;
  led.m_padded = m;
  led.lanes = lanes;
  led.gu_count = static_cast<int>(plan.blocks.size());
  led.vu_count = 1;
  led.combining_blocks = 0;
  for (const GatherBlock& b : plan.blocks) {
    if (b.role == "combining") ++led.combining_blocks;
  }
  led.gathering_layers = layers;
  if (led.gu_count != lanes - 1) {
    throw std::logic_error("gathering schedule produced a wrong block count");
  }
  if (layers != (lanes > 1 ? ceil_log2(m) - 1 : 0)) {
    throw std::logic_error("gathering schedule missed its depth target");
  }

  led.prep_depth = depth(plan.prep);
  led.d_u = depth(plan.vectorization);
  led.d_v = depth(plan.multiplication);
  if (!plan.gathering.empty()) {
    led.d_g = 0;
    for (const Circuit& g : plan.gathering)
      led.d_g = std::max(led.d_g, depth(g));
  } else {
    // No layers (M = 2): measure one block on scratch registers anyway so
    // the ledger stays mode-comparable.
    RegisterLayout scratch{n, 4, {}};
    int anc = -1;
    if (options.mode == SynthesisMode::PauliLcu) {
      anc = scratch.add_ancilla(AncillaPurpose::LcuGather);
    }
    Circuit block{scratch};
    if (options.mode == SynthesisMode::ExactUnitary) {
      std::vector<int> both = scratch.register_qubits(1);
      const std::vector<int> two = scratch.register_qubits(2);
      both.insert(both.end(), two.begin(), two.end());
      block.append(GateOp::generic_unitary(
          both, gathering_dense(n, SynthesisMode::ExactUnitary)));
    } else {
      append_gathering_lcu_ops(block, scratch.register_qubits(1),
                               scratch.register_qubits(2), anc);
    }
    if (swaps) {
      block.append(GateOp::register_swap(scratch.register_qubits(1),
                                         scratch.register_qubits(3)));
    }
    led.d_g = depth(block);
  }
  led.block_depth = led.d_u + (ceil_log2(m) - 1) * led.d_g + led.d_v;
  led.sequential_block_depth = plan.m_original;

  led.register_qubit_count = plan.layout.register_qubit_count();
  led.ancilla_count = static_cast<int>(plan.layout.ancillas.size());
  led.total_qubits = plan.layout.total_qubits();

  const CostEstimate cost = CostModel{}.estimate(plan.full_circuit());
  led.cost_gates = cost.gates;
  led.cost_depth = static_cast<int>(cost.depth);
  led.helper_ancillas = cost.helper_ancillas;

  led.lambda_max = plan.multiplier.lambda_max;
  const double nn = static_cast<double>(dim);
  if (options.mode == SynthesisMode::ExactUnitary) {
    led.expected_branch_scale = std::pow(nn, -(2.0 * lanes - 1.0) / 2.0);
  } else {
    led.expected_branch_scale = std::pow(nn, -lanes / 2.0) *
                                std::pow(nn, -(lanes - 1.0)) /
                                led.lambda_max;
  }
  led.expected_success_probability =
      led.expected_branch_scale * led.expected_branch_scale;

  return plan;
}

}  // namespace dql

#endif  // DQL_PLANNER_HPP_
