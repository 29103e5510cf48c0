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
// Outcome decoding for Pauli-LCU plans.
//
// In LCU mode every measured branch has a meaning: a gathering block whose
// spent register pair reads |k>, |a> (instead of |0>, |0>) carries the
// product with an extra X-type Pauli insertion Q_{k xor a} at the block's
// seam, and a multiplier operand register reading |j> carries Q_j applied to
// the target vector.  Flag ancillas reading 1 mark the orthogonal LCU
// complement; those branches are failures and cannot be decoded into a
// product.  Exact-synthesis plans scramble non-zero outcomes irrecoverably
// (only the first row of each completion is meaningful), so decoding them is
// an error by construction.
//
// A decoded branch can sometimes be *corrected* back to the reference
// output: if every insertion commutes with all operators to its left, the
// insertions can be pulled out of the product and undone by one combined
// X-string on the output register.  Correction is all-or-nothing.

#ifndef DQL_DECODING_HPP_
#define DQL_DECODING_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dql/errors.hpp"
#include "dql/linalg.hpp"
#include "dql/pauli.hpp"
#include "dql/planner.hpp"
#include "dql/simulator.hpp"

namespace dql {

/// Measured values of one gathering block's post-selected qubits.  Register
/// values are ket labels (most significant bit = first qubit of the
/// register).
struct BlockOutcome {
  std::uint64_t spent_a = 0;
  std::uint64_t spent_b = 0;
  int flag = 0;
};

/// Measured values of every post-selected qubit of a plan.
struct PlanOutcome {
  std::vector<BlockOutcome> blocks;
  std::uint64_t multiplier_value = 0;
  int multiplier_flag = 0;

  bool all_zero() const {
    for (const BlockOutcome& b : blocks) {
      if (b.spent_a || b.spent_b || b.flag) return false;
    }
    return multiplier_value == 0 && multiplier_flag == 0;
  }
};

/// Converts a bit assignment of plan.postselect_qubits() (bits[i] is the
/// measured value of the i-th listed qubit) into per-block outcomes.
inline PlanOutcome outcome_from_bits(const Plan& plan,
                                     const std::vector<int>& bits) {
  if (bits.size() != plan.postselect_qubits().size()) {
    throw std::invalid_argument("outcome bit count does not match the "
                                "plan's post-selected qubits");
  }
  const int n = plan.problem.n;
  std::size_t pos = 0;
  auto read_register = [&]() {
    std::uint64_t value = 0;
    for (int j = 0; j < n; ++j) {
      value = (value << 1) | static_cast<std::uint64_t>(bits[pos++] & 1);
    }
    return value;
  };
  PlanOutcome outcome;
  for (const GatherBlock& b : plan.blocks) {
    BlockOutcome bo;
    bo.spent_a = read_register();
    bo.spent_b = read_register();
    if (b.ancilla >= 0) bo.flag = bits[pos++] & 1;
    outcome.blocks.push_back(bo);
  }
  outcome.multiplier_value = read_register();
  if (plan.multiplier.ancilla >= 0) outcome.multiplier_flag = bits[pos++] & 1;
  return outcome;
}

/// Inverse of outcome_from_bits.
inline std::vector<int> outcome_to_bits(const Plan& plan,
                                        const PlanOutcome& outcome) {
  if (outcome.blocks.size() != plan.blocks.size()) {
    throw std::invalid_argument("outcome block count does not match plan");
  }
  const int n = plan.problem.n;
  std::vector<int> bits;
  auto write_register = [&](std::uint64_t value) {
    for (int j = n - 1; j >= 0; --j) {
      bits.push_back(static_cast<int>((value >> j) & 1));
    }
  };
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    write_register(outcome.blocks[i].spent_a);
    write_register(outcome.blocks[i].spent_b);
    if (plan.blocks[i].ancilla >= 0)
      bits.push_back(outcome.blocks[i].flag & 1);
  }
  write_register(outcome.multiplier_value);
  if (plan.multiplier.ancilla >= 0)
    bits.push_back(outcome.multiplier_flag & 1);
  return bits;
}

/// An X-type Pauli inserted into the operator product: `position` = p means
/// the insertion sits between U_p and U_{p+1}; p = M places it between U_M
/// and the target vector.
struct Insertion {
  int position = 0;
  PauliString pauli;
};

struct DecodedOutcome {
  bool kept = false;       // the all-zeros branch: no flags, no insertions
  bool decodable = false;  // no flag fired; insertions describe the branch
  std::vector<int> flagged_blocks;  // block ids with flag = 1; -1 = multiplier
  std::vector<Insertion> insertions;  // non-identity, ascending position
};

/// Decodes a measured outcome of a Pauli-LCU plan.  Throws DecodeModeError
/// for exact-synthesis plans.
inline DecodedOutcome decode_outcome(const Plan& plan,
                                     const PlanOutcome& outcome) {
  if (plan.options.mode != SynthesisMode::PauliLcu) {
    throw DecodeModeError("only Pauli-LCU plans admit outcome decoding; "
                          "exact-synthesis completions scramble non-zero "
                          "outcomes");
  }
  if (outcome.blocks.size() != plan.blocks.size()) {
    throw std::invalid_argument("outcome block count does not match plan");
  }
  const int n = plan.problem.n;
  DecodedOutcome decoded;
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    const BlockOutcome& bo = outcome.blocks[i];
    if (bo.flag) decoded.flagged_blocks.push_back(plan.blocks[i].id);
    const std::uint64_t mask = bo.spent_a ^ bo.spent_b;
    if (mask != 0) {
      decoded.insertions.push_back(
          {plan.blocks[i].seam, index_x_string(mask, n)});
    }
  }
  if (outcome.multiplier_flag) decoded.flagged_blocks.push_back(-1);
  if (outcome.multiplier_value != 0) {
    decoded.insertions.push_back(
        {static_cast<int>(plan.problem.ops.size()),
         index_x_string(outcome.multiplier_value, n)});
  }
  std::sort(decoded.insertions.begin(), decoded.insertions.end(),
            [](const Insertion& a, const Insertion& b) {
              return a.position < b.position;
            });
  decoded.decodable = decoded.flagged_blocks.empty();
  decoded.kept = decoded.decodable && decoded.insertions.empty();
  return decoded;
}

/// Reference output of a decoded branch: the operator product with every
/// insertion spliced in, applied to the target vector, normalized.
inline ComplexVector decoded_target(const Plan& plan,
                                    const DecodedOutcome& decoded) {
  if (!decoded.decodable) {
    throw std::invalid_argument("a flagged branch has no decoded target");
  }
  const int m = static_cast<int>(plan.problem.ops.size());
  ComplexVector t = plan.problem.v.normalized();
  auto apply_insertions_at = [&](int position) {
    for (const Insertion& ins : decoded.insertions) {
      if (ins.position == position) t = ins.pauli.apply(t);
    }
  };
  apply_insertions_at(m);
  for (int p = m; p >= 1; --p) {
    t = plan.problem.ops[p - 1] * t;
    apply_insertions_at(p - 1);
  }
  return t;
}

/// True when U P = P U within tol (max-abs entry difference).
inline bool commutes(const ComplexMatrix& u, const PauliString& p,
                     double tol) {
  const ComplexMatrix pm = p.as_matrix();
  return (u * pm).max_abs_diff(pm * u) <= tol;
}

/// The single X-string that undoes every insertion of a decoded branch once
/// applied to the output register.  Requires each insertion to commute with
/// all operators to its left (U_1 .. U_position); otherwise the branch is
/// not correctable and NotCorrectableError names the first obstruction.
inline PauliString combined_correction(const Plan& plan,
                                       const DecodedOutcome& decoded,
                                       double tol = 1e-9) {
  if (!decoded.decodable) {
    throw std::invalid_argument("a flagged branch cannot be corrected");
  }
  const int n = plan.problem.n;
  std::uint64_t combined_index_mask = 0;
  for (const Insertion& ins : decoded.insertions) {
    for (int j = 1; j <= ins.position &&
                    j <= static_cast<int>(plan.problem.ops.size());
         ++j) {
      if (!commutes(plan.problem.ops[j - 1], ins.pauli, tol)) {
        throw NotCorrectableError(j, ins.pauli.label());
      }
    }
    combined_index_mask ^= ins.pauli.index_flip_mask();
  }
  return index_x_string(combined_index_mask, n);
}

/// Applies the combined correction to a decoded branch's output-register
/// state.
inline ComplexVector correct_branch(const Plan& plan,
                                    const DecodedOutcome& decoded,
                                    const ComplexVector& branch,
                                    double tol = 1e-9) {
  const PauliString fix = combined_correction(plan, decoded, tol);
  return fix.apply(branch);
}

/// One measurement branch of a simulated plan.
struct BranchRecord {
  PlanOutcome outcome;
  double probability = 0.0;
  ComplexVector output;  // normalized state on the output register
};

/// Splits a simulated full-pipeline state into measurement branches over the
/// post-selected qubits.  Branches with probability <= prob_floor are
/// dropped.  Sorted by descending probability (ties: ascending outcome key)
/// so the kept branch is first for well-formed plans.
inline std::vector<BranchRecord> enumerate_branches(
    const Plan& plan, const StateVector& state, double prob_floor = 1e-15) {
  const std::vector<int> ps = plan.postselect_qubits();
  const std::vector<int> out = plan.output_qubits();
  if (ps.size() + out.size() != static_cast<std::size_t>(state.num_qubits)) {
    throw std::invalid_argument("state does not match the plan's qubit "
                                "partition");
  }
  if (ps.size() > 60) {
    throw std::invalid_argument("too many post-selected qubits to "
                                "enumerate");
  }
  const std::size_t out_dim = std::size_t{1} << out.size();
  std::unordered_map<std::uint64_t, ComplexVector> branches;
  for (std::size_t idx = 0; idx < state.amps.size(); ++idx) {
    if (state.amps[idx] == Complex{0.0, 0.0}) continue;
    std::uint64_t key = 0;
    for (int q : ps) {
      key = (key << 1) | ((idx & state.qubit_mask(q)) ? 1u : 0u);
    }
    std::uint64_t sub = 0;
    for (int q : out) {
      sub = (sub << 1) | ((idx & state.qubit_mask(q)) ? 1u : 0u);
    }
    auto it = branches.find(key);
    if (it == branches.end()) {
      it = branches.emplace(key, ComplexVector(out_dim)).first;
    }
    it->second[sub] += state.amps[idx];
  }

  std::vector<std::pair<std::uint64_t, ComplexVector>> ordered(
      branches.begin(), branches.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<BranchRecord> records;
  for (auto& [key, amps] : ordered) {
    const double prob = amps.norm() * amps.norm();
    if (prob <= prob_floor) continue;
    BranchRecord rec;
    std::vector<int> bits(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      bits[i] = static_cast<int>((key >> (ps.size() - 1 - i)) & 1);
    }
    rec.outcome = outcome_from_bits(plan, bits);
    rec.probability = prob;
    rec.output = amps.normalized();
    records.push_back(std::move(rec));
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const BranchRecord& a, const BranchRecord& b) {
                     return a.probability > b.probability;
                   });
  return records;
}

/// Deterministic enumeration of decodable outcomes (all flags zero): block
/// spent-pair values and the multiplier value count up as a mixed-radix
/// odometer, least significant at the multiplier.  At most `budget` entries.
inline std::vector<PlanOutcome> enumerate_decodable_outcomes(
    const Plan& plan, std::size_t budget) {
  std::vector<PlanOutcome> outcomes;
  const std::uint64_t dim = std::uint64_t{1} << plan.problem.n;
  PlanOutcome current;
  current.blocks.resize(plan.blocks.size());
  while (outcomes.size() < budget) {
    outcomes.push_back(current);
    // Increment: multiplier value first, then spent_b/spent_a per block.
    if (++current.multiplier_value < dim) continue;
    current.multiplier_value = 0;
    bool carried = false;
    for (std::size_t i = current.blocks.size(); i-- > 0;) {
      if (++current.blocks[i].spent_b < dim) {
        carried = true;
        break;
      }
      current.blocks[i].spent_b = 0;
      if (++current.blocks[i].spent_a < dim) {
        carried = true;
        break;
      }
      current.blocks[i].spent_a = 0;
    }
    if (!carried) break;  // odometer wrapped: full space enumerated
  }
  return outcomes;
}

}  // namespace dql

#endif  // DQL_DECODING_HPP_
