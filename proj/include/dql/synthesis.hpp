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
// Gate synthesis for the two pipeline primitives:
//
//   * the gathering operator G, whose first row is vec(I)^T, so that applied
//     to a pair of vectorized operators it contracts them into the vectorized
//     product (the amplitude lands on the all-zeros row of one register pair);
//   * the multiplier operator V, whose first row is v^T, so that applied to a
//     vectorized operator it emits the matrix-vector product on the column
//     register.
//
// Each primitive is synthesized in one of two interchangeable modes:
//
//   * ExactUnitary: a dense unitary completion of the defining row (the rest
//     of the operator is an arbitrary orthonormal completion; only the first
//     row is contractually meaningful).  The kept branch carries amplitude
//     1/sqrt(N) per gathering and the exact inner product for V.
//   * PauliLcu: the operator is a linear combination of X-type Pauli strings
//     and is embedded as a block of a larger unitary using one flag ancilla
//     per block.  The kept branch (ancilla 0) applies G/N, respectively
//     V/lambda_max.  This mode admits outcome decoding because every flagged
//     branch differs from the kept branch by a known Pauli insertion.

#ifndef DQL_SYNTHESIS_HPP_
#define DQL_SYNTHESIS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dql/circuit.hpp"
#include "dql/linalg.hpp"
#include "dql/pauli.hpp"
#include "dql/simulator.hpp"

namespace dql {

enum class SynthesisMode {
  ExactUnitary,
  PauliLcu,
};

inline const char* synthesis_mode_name(SynthesisMode mode) {
  return mode == SynthesisMode::ExactUnitary ? "exact" : "lcu";
}

inline SynthesisMode synthesis_mode_from_name(const std::string& name) {
  if (name == "exact") return SynthesisMode::ExactUnitary;
  if (name == "lcu") return SynthesisMode::PauliLcu;
  throw std::invalid_argument("unknown synthesis mode '" + name +
                              "' (expected 'exact' or 'lcu')");
}

namespace detail {

/// Candidates whose residual after projection is below this threshold are
/// considered already spanned and skipped during completion.
constexpr double kCompletionSkipThreshold = 1e-8;

}  // namespace detail

/// Completes a set of orthonormal rows to a full unitary matrix.
///
/// The given rows are kept verbatim (they must already be orthonormal; this
/// is asserted to 1e-8).  Remaining rows are produced by Gram-Schmidt over
/// the computational basis vectors e_0, e_1, ... in order, skipping
/// candidates that are (numerically) inside the span of the rows collected
/// so far.  Each accepted candidate is orthogonalized twice against the
/// current rows before normalization, which keeps the result orthonormal to
/// machine precision even for nearly dependent candidates.  The procedure is
/// deterministic: equal inputs produce bit-identical completions.
inline ComplexMatrix complete_orthonormal_rows(
    const std::vector<ComplexVector>& defining_rows, std::size_t dim) {
  if (defining_rows.empty() || defining_rows.size() > dim) {
    throw std::invalid_argument("completion needs between 1 and dim rows");
  }
  for (const ComplexVector& row : defining_rows) {
    if (row.size() != dim) {
      throw std::invalid_argument("defining row has wrong dimension");
    }
    if (std::abs(row.norm() - 1.0) > 1e-8) {
      throw std::invalid_argument("defining row is not unit norm");
    }
  }
  std::vector<ComplexVector> rows = defining_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(rows[j].dot(rows[i])) > 1e-8) {
        throw std::invalid_argument("defining rows are not orthogonal");
      }
    }
  }

  for (std::size_t cand = 0; cand < dim && rows.size() < dim; ++cand) {
    ComplexVector w(dim);
    w[cand] = Complex(1.0, 0.0);
    for (const ComplexVector& r : rows) {
      Complex overlap = r.dot(w);
      for (std::size_t k = 0; k < dim; ++k) w[k] -= overlap * r[k];
    }
    if (w.norm() < detail::kCompletionSkipThreshold) continue;
    // Second orthogonalization pass scrubs the round-off left by the first.
    for (const ComplexVector& r : rows) {
      Complex overlap = r.dot(w);
      for (std::size_t k = 0; k < dim; ++k) w[k] -= overlap * r[k];
    }
    double norm = w.norm();
    for (std::size_t k = 0; k < dim; ++k) w[k] /= norm;
    rows.push_back(w);
  }
  if (rows.size() != dim) {
    throw std::runtime_error("orthonormal completion ran out of candidates");
  }

  ComplexMatrix u(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) u(r, c) = rows[r][c];
  }
  return u;
}

// ---------------------------------------------------------------------------
// Gathering operator
// ---------------------------------------------------------------------------

/// Dense gathering operator on two n-qubit registers (dimension 4^n).
///
/// PauliLcu mode returns sum_j Q_j (x) Q_j over the N index-flip strings
/// Q_j = index_x_string(j, n); its first row is vec(I)^T and G^2 = N G.
/// ExactUnitary mode returns a unitary whose first row is vec(I)^T/sqrt(N).
inline ComplexMatrix gathering_dense(int n, SynthesisMode mode) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("dense gathering operator supports 1..5 "
                                "qubits per register");
  }
  const std::size_t reg_dim = std::size_t{1} << n;
  const std::size_t dim = reg_dim * reg_dim;
  if (mode == SynthesisMode::PauliLcu) {
    ComplexMatrix g(dim, dim);
    for (std::size_t j = 0; j < reg_dim; ++j) {
      ComplexMatrix q = index_x_string(static_cast<std::uint64_t>(j),
                                       n).as_matrix();
      g = g + kron(q, q);
    }
    return g;
  }
  ComplexVector first = vec_identity_state(reg_dim);
  return complete_orthonormal_rows({first}, dim);
}

/// Dense multiplier operator on one n-qubit register (dimension 2^n = size
/// of v).  PauliLcu mode returns sum_j v_j Q_j (requires real v); its first
/// row is v^T.  ExactUnitary mode returns a unitary whose first row is v^T
/// (v must be unit norm; entries are used without conjugation so that
/// row 0 . w = v^T w exactly).
inline ComplexMatrix multiplier_dense(const ComplexVector& v,
                                      SynthesisMode mode) {
  const std::size_t dim = v.size();
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("multiplier vector length must be a power "
                                "of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if (mode == SynthesisMode::PauliLcu) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (std::abs(v[j].imag()) > 1e-12) {
        throw std::invalid_argument("Pauli-LCU multiplier requires a real "
                                    "target vector");
      }
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      ComplexMatrix q = index_x_string(static_cast<std::uint64_t>(j),
                                       n).as_matrix();
      m = m + q * v[j];
    }
    return m;
  }
  if (std::abs(v.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("exact multiplier requires a unit-norm "
                                "target vector");
  }
  return complete_orthonormal_rows({v}, dim);
}

// ---------------------------------------------------------------------------
// Phase circuit exp(i pi/N G)
// ---------------------------------------------------------------------------

/// Appends the uncontrolled phase circuit exp(i pi/N G) acting on two
/// n-qubit register qubit lists.  Structure: a Hadamard wall, a CX ladder
/// copying register one onto register two, a native all-zeros phase flip on
/// register two, then the mirror ladder and wall.  The conjugation maps G to
/// N * (projector onto |0...0> of register two), whose exponential is that
/// single phase flip.
inline void append_gathering_phase_ops(Circuit& circuit,
                                       const std::vector<int>& reg_one,
                                       const std::vector<int>& reg_two) {
  const int n = static_cast<int>(reg_one.size());
  if (reg_two.size() != reg_one.size() || n == 0) {
    throw std::invalid_argument("phase circuit needs two equal-size "
                                "registers");
  }
  for (int q : reg_one) circuit.append(GateOp::h(q));
  for (int q : reg_two) circuit.append(GateOp::h(q));
  for (int j = 0; j < n; ++j) circuit.append(GateOp::cx(reg_one[j],
                                                        reg_two[j]));
  if (n == 1) {
    // One-qubit flip target: all-zeros flip degenerates to X Z X.
    circuit.append(GateOp::x(reg_two[0]));
    circuit.append(GateOp::z(reg_two[0]));
    circuit.append(GateOp::x(reg_two[0]));
  } else {
    std::vector<ControlSpec> controls;
    for (int j = 0; j + 1 < n; ++j) controls.push_back({reg_two[j], 0});
    circuit.append(GateOp::mcz0(reg_two[n - 1], controls));
  }
  for (int j = n - 1; j >= 0; --j) circuit.append(GateOp::cx(reg_one[j],
                                                             reg_two[j]));
  for (int q : reg_two) circuit.append(GateOp::h(q));
  for (int q : reg_one) circuit.append(GateOp::h(q));
}

/// Standalone phase circuit exp(i pi/N G) on a fresh two-register layout.
inline Circuit gathering_phase_circuit(int n) {
  Circuit c{RegisterLayout{n, 2, {}}};
  append_gathering_phase_ops(c, c.layout.register_qubits(0),
                             c.layout.register_qubits(1));
  return c;
}

// ---------------------------------------------------------------------------
// LCU gathering block
// ---------------------------------------------------------------------------

/// Appends the flag-ancilla gathering block implementing
///   |psi>|0_a>  ->  1/2 (I - e^{i pi/N G})|psi>|0_a>
///                 + 1/2 (I + e^{i pi/N G})|psi>|1_a>,
/// whose ancilla-0 branch applies G/N.  The controlled phase circuit is
/// spelled with every layer controlled on the ancilla: 2n controlled-H, an
/// n-rung CCX ladder, one (n+1)-ary all-zeros flip carrying the ancilla as a
/// one-polarity control, then the mirrored ladder and wall, and finally Z
/// and H on the ancilla.
inline void append_gathering_lcu_ops(Circuit& circuit,
                                     const std::vector<int>& reg_one,
                                     const std::vector<int>& reg_two,
                                     int ancilla) {
  const int n = static_cast<int>(reg_one.size());
  if (reg_two.size() != reg_one.size() || n == 0) {
    throw std::invalid_argument("gathering block needs two equal-size "
                                "registers");
  }
  circuit.append(GateOp::h(ancilla));
  for (int q : reg_one) circuit.append(GateOp::ch(ancilla, q));
  for (int q : reg_two) circuit.append(GateOp::ch(ancilla, q));
  for (int j = 0; j < n; ++j) {
    circuit.append(GateOp::ccx(ancilla, reg_one[j], reg_two[j]));
  }
  {
    std::vector<ControlSpec> controls;
    controls.push_back({ancilla, 1});
    for (int j = 0; j + 1 < n; ++j) controls.push_back({reg_two[j], 0});
    circuit.append(GateOp::mcz0(reg_two[n - 1], controls));
  }
  for (int j = n - 1; j >= 0; --j) {
    circuit.append(GateOp::ccx(ancilla, reg_one[j], reg_two[j]));
  }
  for (int q : reg_two) circuit.append(GateOp::ch(ancilla, q));
  for (int q : reg_one) circuit.append(GateOp::ch(ancilla, q));
  circuit.append(GateOp::z(ancilla));
  circuit.append(GateOp::h(ancilla));
}

/// Standalone LCU gathering block: two n-qubit registers plus one flag
/// ancilla (the last qubit).
inline Circuit gathering_lcu_block(int n) {
  RegisterLayout layout{n, 2, {}};
  layout.add_ancilla(AncillaPurpose::LcuGather);
  Circuit c{layout};
  append_gathering_lcu_ops(c, c.layout.register_qubits(0),
                           c.layout.register_qubits(1),
                           layout.ancillas[0].qubit);
  return c;
}

// ---------------------------------------------------------------------------
// LCU multiplier block
// ---------------------------------------------------------------------------

/// Eigenvalues of the Pauli-LCU multiplier sum_j v_j Q_j in the Hadamard
/// basis: lambda_b = sum_m v_m (-1)^{popcount(m & b)} over amplitude
/// indices.
inline std::vector<double> multiplier_spectrum(const ComplexVector& v) {
  const std::size_t dim = v.size();
  std::vector<double> lambda(dim, 0.0);
  for (std::size_t b = 0; b < dim; ++b) {
    double acc = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
      double sign = (popcount64(m & b) & 1) ? -1.0 : 1.0;
      acc += sign * v[m].real();
    }
    lambda[b] = acc;
  }
  return lambda;
}

/// Normalization constant for the LCU multiplier: lambda_max = sum_j |v_j|.
/// Bounds every |lambda_b| from above, so lambda_b/lambda_max is a valid
/// cosine.
inline double multiplier_lambda_max(const ComplexVector& v) {
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += std::abs(v[j]);
  return acc;
}

/// Diagonal phases exp(+/- i arccos(lambda_b / lambda_max)) used by the
/// multiplier block.  sign = +1 or -1.
inline std::vector<Complex> multiplier_phases(const ComplexVector& v,
                                              int sign) {
  const double lmax = multiplier_lambda_max(v);
  if (lmax <= 0.0) {
    throw std::invalid_argument("multiplier vector must be nonzero");
  }
  std::vector<double> lambda = multiplier_spectrum(v);
  std::vector<Complex> phases(lambda.size());
  for (std::size_t b = 0; b < lambda.size(); ++b) {
    double ratio = lambda[b] / lmax;
    ratio = std::min(1.0, std::max(-1.0, ratio));
    const double theta = std::acos(ratio);
    phases[b] = std::polar(1.0, sign * theta);
  }
  return phases;
}

/// Appends the flag-ancilla multiplier block.  The register is conjugated by
/// Hadamard walls; between them the ancilla selects between the two phase
/// diagonals exp(+/- i arccos(Lambda/lambda_max)), so the ancilla-0 branch
/// applies H Lambda H / lambda_max = V / lambda_max.  Requires real v.
inline void append_multiplier_lcu_ops(Circuit& circuit,
                                      const std::vector<int>& reg,
                                      int ancilla, const ComplexVector& v) {
  if (v.size() != (std::size_t{1} << reg.size())) {
    throw std::invalid_argument("multiplier vector does not match register "
                                "size");
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (std::abs(v[j].imag()) > 1e-12) {
      throw std::invalid_argument("Pauli-LCU multiplier requires a real "
                                  "target vector");
    }
  }
  const std::vector<Complex> plus = multiplier_phases(v, +1);
  const std::vector<Complex> minus = multiplier_phases(v, -1);
  for (int q : reg) circuit.append(GateOp::h(q));
  circuit.append(GateOp::h(ancilla));
  circuit.append(GateOp::diagonal_unitary(reg, plus)
                     .with_controls({{ancilla, 0}}));
  circuit.append(GateOp::diagonal_unitary(reg, minus)
                     .with_controls({{ancilla, 1}}));
  circuit.append(GateOp::h(ancilla));
  for (int q : reg) circuit.append(GateOp::h(q));
}

/// Standalone LCU multiplier block: one n-qubit register plus one flag
/// ancilla (the last qubit).
inline Circuit multiplier_lcu_block(const ComplexVector& v) {
  std::size_t dim = v.size();
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || n == 0) {
    throw std::invalid_argument("multiplier vector length must be a power "
                                "of two");
  }
  RegisterLayout layout{n, 1, {}};
  layout.add_ancilla(AncillaPurpose::LcuMultiplier);
  Circuit c{layout};
  append_multiplier_lcu_ops(c, c.layout.register_qubits(0),
                            layout.ancillas[0].qubit, v);
  return c;
}

// ---------------------------------------------------------------------------
// Pair preparation
// ---------------------------------------------------------------------------

/// Appends the preparation of vec(I)/sqrt(N) across a register pair:
/// a Hadamard wall on the column register and a CX ladder copying it onto
/// the row register (depth 2).
inline void append_pair_prep_ops(Circuit& circuit,
                                 const std::vector<int>& col_reg,
                                 const std::vector<int>& row_reg) {
  if (col_reg.size() != row_reg.size() || col_reg.empty()) {
    throw std::invalid_argument("pair preparation needs two equal-size "
                                "registers");
  }
  for (int q : col_reg) circuit.append(GateOp::h(q));
  for (std::size_t j = 0; j < col_reg.size(); ++j) {
    circuit.append(GateOp::cx(col_reg[j], row_reg[j]));
  }
}

/// Standalone preparation circuit for one register pair.
inline Circuit pair_prep_circuit(int n) {
  Circuit c{RegisterLayout{n, 2, {}}};
  append_pair_prep_ops(c, c.layout.register_qubits(0),
                       c.layout.register_qubits(1));
  return c;
}

// ---------------------------------------------------------------------------
// Success probability of a flag-ancilla block
// ---------------------------------------------------------------------------

/// Exact squared norm of the flag-0 branch of a standalone block circuit
/// applied to `input` (a state over the block's register qubits, with every
/// ancilla initialized to zero).  This is the post-selection probability of
/// the block on that input.
inline double lcu_success_probability(const Circuit& block,
                                      const ComplexVector& input) {
  const int total = block.layout.total_qubits();
  const int anc_count = static_cast<int>(block.layout.ancillas.size());
  const int reg_qubits = total - anc_count;
  if (input.size() != (std::size_t{1} << reg_qubits)) {
    throw std::invalid_argument("input state does not match the block's "
                                "register qubits");
  }
  // Registers occupy the leading qubits and ancillas the trailing ones, so
  // embedding |input>|0...0_anc> is a stride copy.
  StateVector state;
  state.num_qubits = total;
  state.amps.assign(std::size_t{1} << total, Complex{0.0, 0.0});
  const std::size_t anc_dim = std::size_t{1} << anc_count;
  for (std::size_t i = 0; i < input.size(); ++i) {
    state.amps[i * anc_dim] = input[i];
  }
  run_inplace(block, state);
  double prob = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    prob += std::norm(state.amps[i * anc_dim]);
  }
  return prob;
}

}  // namespace dql

#endif  // DQL_SYNTHESIS_HPP_
