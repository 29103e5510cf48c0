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

#ifndef DQL_CIRCUIT_HPP_
#define DQL_CIRCUIT_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dql/linalg.hpp"

namespace dql {

enum class GateKind {
  Hadamard,
  PauliX,
  PauliZ,
  CX,
  CZ,
  ControlledHadamard,
  CCX,
  MultiControlledZ0,
  DiagonalUnitary,
  GenericUnitary,
  Swap,
  RegisterSwap,
};

inline const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::Hadamard: return "Hadamard";
    case GateKind::PauliX: return "X";
    case GateKind::PauliZ: return "Z";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::ControlledHadamard: return "ControlledHadamard";
    case GateKind::CCX: return "CCX";
    case GateKind::MultiControlledZ0: return "MultiControlledZ0";
    case GateKind::DiagonalUnitary: return "DiagonalUnitary";
    case GateKind::GenericUnitary: return "GenericUnitary";
    case GateKind::Swap: return "Swap";
    case GateKind::RegisterSwap: return "RegisterSwap";
  }
  return "?";
}

/// A control qubit together with the basis value (0 or 1) that activates it.
struct ControlSpec {
  int qubit = 0;
  int polarity = 1;
  bool operator==(const ControlSpec&) const = default;
};

/**
 * One gate application.  `targets` are the acted-on qubits in tensor order
 * (targets[0] is the most significant index bit of the embedded operator);
 * `controls` gate the whole operation and must be disjoint from targets.
 *
 * Semantics notes:
 *  - MultiControlledZ0 flips the sign of basis states in which every control
 *    matches its polarity and the *target is 0*.  This is the native form of
 *    an all-zeros phase flip; the X-conjugated spelling (X t; Z-with-zero-
 *    polarity-controls; X t) is unitarily identical and covered by tests.
 *  - RegisterSwap exchanges the first and second halves of `targets`
 *    qubit-by-qubit.
 *  - DiagonalUnitary stores its 2^k diagonal entries in `diagonal`;
 *    GenericUnitary stores a dense 2^k x 2^k matrix in `matrix`.
 */
struct GateOp {
  GateKind kind = GateKind::Hadamard;
  std::vector<int> targets;
  std::vector<ControlSpec> controls;
  ComplexMatrix matrix;           // GenericUnitary only
  std::vector<Complex> diagonal;  // DiagonalUnitary only

  static GateOp h(int q) { return {GateKind::Hadamard, {q}, {}, {}, {}}; }
  static GateOp x(int q) { return {GateKind::PauliX, {q}, {}, {}, {}}; }
  static GateOp z(int q) { return {GateKind::PauliZ, {q}, {}, {}, {}}; }
  static GateOp cx(int c, int t) {
    return {GateKind::CX, {t}, {{c, 1}}, {}, {}};
  }
  static GateOp cz(int c, int t) {
    return {GateKind::CZ, {t}, {{c, 1}}, {}, {}};
  }
  static GateOp ch(int c, int t) {
    return {GateKind::ControlledHadamard, {t}, {{c, 1}}, {}, {}};
  }
  static GateOp ccx(int c1, int c2, int t) {
    return {GateKind::CCX, {t}, {{c1, 1}, {c2, 1}}, {}, {}};
  }
  static GateOp mcz0(int target, std::vector<ControlSpec> ctrls) {
    return {GateKind::MultiControlledZ0, {target}, std::move(ctrls), {}, {}};
  }
  static GateOp swap(int a, int b) { return {GateKind::Swap, {a, b}, {}, {}, {}}; }
  static GateOp register_swap(const std::vector<int>& reg_a,
                              const std::vector<int>& reg_b) {
    std::vector<int> t = reg_a;
    t.insert(t.end(), reg_b.begin(), reg_b.end());
    return {GateKind::RegisterSwap, std::move(t), {}, {}, {}};
  }
  static GateOp diagonal_unitary(std::vector<int> qubits,
                                 std::vector<Complex> entries) {
    return {GateKind::DiagonalUnitary, std::move(qubits), {}, {}, std::move(entries)};
  }
  static GateOp generic_unitary(std::vector<int> qubits, ComplexMatrix m) {
    return {GateKind::GenericUnitary, std::move(qubits), {}, std::move(m), {}};
  }

  GateOp with_controls(std::vector<ControlSpec> extra) const {
    GateOp op = *this;
    op.controls.insert(op.controls.end(), extra.begin(), extra.end());
    return op;
  }

  /// All qubits the op touches (targets then control qubits).
  std::vector<int> qubits() const {
    std::vector<int> q = targets;
    for (const auto& c : controls) q.push_back(c.qubit);
    return q;
  }
};

enum class AncillaPurpose { LcuGather, LcuMultiplier, MczHelper };

inline const char* ancilla_purpose_name(AncillaPurpose p) {
  switch (p) {
    case AncillaPurpose::LcuGather: return "LCU-G";
    case AncillaPurpose::LcuMultiplier: return "LCU-V";
    case AncillaPurpose::MczHelper: return "MCZ-helper";
  }
  return "?";
}

struct Ancilla {
  int qubit = 0;
  AncillaPurpose purpose = AncillaPurpose::LcuGather;
};

/**
 * Register-major qubit layout: `register_count` registers of
 * `qubits_per_register` qubits each, laid out consecutively from qubit 0,
 * followed by ancilla qubits.  Qubit 0 is the leftmost tensor factor (most
 * significant amplitude-index bit); X on qubit 0 of |00> gives |10>.
 */
struct RegisterLayout {
  int qubits_per_register = 0;
  int register_count = 0;
  std::vector<Ancilla> ancillas;

  int register_qubit_count() const {
    return qubits_per_register * register_count;
  }
  int total_qubits() const {
    return register_qubit_count() + static_cast<int>(ancillas.size());
  }
  std::vector<int> register_qubits(int r) const {
    if (r < 0 || r >= register_count)
      throw std::out_of_range("register index out of range");
    std::vector<int> q(qubits_per_register);
    for (int i = 0; i < qubits_per_register; ++i)
      q[i] = r * qubits_per_register + i;
    return q;
  }
  int add_ancilla(AncillaPurpose purpose) {
    const int q = total_qubits();
    ancillas.push_back({q, purpose});
    return q;
  }
  bool operator==(const RegisterLayout& other) const {
    if (qubits_per_register != other.qubits_per_register ||
        register_count != other.register_count ||
        ancillas.size() != other.ancillas.size())
      return false;
    for (std::size_t i = 0; i < ancillas.size(); ++i)
      if (ancillas[i].qubit != other.ancillas[i].qubit ||
          ancillas[i].purpose != other.ancillas[i].purpose)
        return false;
    return true;
  }
};

/**
 * A gate list over a layout, applied in listed order, with a global complex
 * prefactor.  unitary(Circuit) = scale * (last op) * ... * (first op); the
 * scale keeps dropped constants explicit so equality checks can be exact.
 */
struct Circuit {
  RegisterLayout layout;
  std::vector<GateOp> ops;
  Complex scale{1.0, 0.0};

  Circuit() = default;
  explicit Circuit(RegisterLayout l) : layout(std::move(l)) {}

  int total_qubits() const { return layout.total_qubits(); }
  void append(GateOp op) { ops.push_back(std::move(op)); }
  void append_all(const Circuit& other) {
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
    scale *= other.scale;
  }
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}
}  // namespace detail

inline void validate_gate(const GateOp& op, int total_qubits,
                          double unitary_tol = 1e-10) {
  using detail::require;
  std::vector<int> seen;
  for (int q : op.qubits()) {
    require(q >= 0 && q < total_qubits,
            std::string(kind_name(op.kind)) + ": qubit " + std::to_string(q) +
                " out of range");
    require(std::find(seen.begin(), seen.end(), q) == seen.end(),
            std::string(kind_name(op.kind)) + ": duplicate qubit " +
                std::to_string(q));
    seen.push_back(q);
  }
  for (const auto& c : op.controls)
    require(c.polarity == 0 || c.polarity == 1, "control polarity must be 0/1");

  const std::size_t nt = op.targets.size();
  switch (op.kind) {
    case GateKind::Hadamard:
    case GateKind::PauliX:
    case GateKind::PauliZ:
      require(nt == 1, "single-qubit kind takes one target");
      break;
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::ControlledHadamard:
      require(nt == 1 && op.controls.size() == 1,
              "controlled single-qubit kind takes one target, one control");
      break;
    case GateKind::CCX:
      require(nt == 1 && op.controls.size() == 2,
              "CCX takes one target, two controls");
      break;
    case GateKind::MultiControlledZ0:
      require(nt == 1, "MultiControlledZ0 takes one target");
      break;
    case GateKind::Swap:
      require(nt == 2, "Swap takes two targets");
      break;
    case GateKind::RegisterSwap:
      require(nt >= 2 && nt % 2 == 0, "RegisterSwap takes an even qubit list");
      break;
    case GateKind::DiagonalUnitary: {
      require(nt >= 1 && nt <= 20, "DiagonalUnitary arity");
      const std::size_t dim = std::size_t{1} << nt;
      require(op.diagonal.size() == dim, "diagonal length != 2^k");
      for (const auto& d : op.diagonal)
        require(std::abs(std::abs(d) - 1.0) <= unitary_tol,
                "diagonal entry is not unit modulus");
      break;
    }
    case GateKind::GenericUnitary: {
      require(nt >= 1 && nt <= 20, "GenericUnitary arity");
      const std::size_t dim = std::size_t{1} << nt;
      require(op.matrix.rows() == dim && op.matrix.cols() == dim,
              "matrix shape != 2^k x 2^k");
      require(op.matrix.is_unitary(unitary_tol), "matrix is not unitary");
      break;
    }
  }
}

inline void validate(const Circuit& c, double unitary_tol = 1e-10) {
  for (const auto& op : c.ops) validate_gate(op, c.total_qubits(), unitary_tol);
}

/**
 * Greedy front-to-back layering: each op lands one layer after the latest
 * earlier op sharing a qubit with it.  Ops on disjoint qubits merge into a
 * layer; listed order is preserved within the partial order.
 */
inline std::vector<int> layer_assignment(const Circuit& c) {
  std::vector<int> frontier(std::max(c.total_qubits(), 1), 0);
  std::vector<int> layers(c.ops.size(), 0);
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    int layer = 0;
    for (int q : c.ops[i].qubits()) layer = std::max(layer, frontier[q]);
    ++layer;
    layers[i] = layer;
    for (int q : c.ops[i].qubits()) frontier[q] = layer;
  }
  return layers;
}

inline int depth(const Circuit& c) {
  int d = 0;
  for (int layer : layer_assignment(c)) d = std::max(d, layer);
  return d;
}

/// a then b, over the identical layout; scales multiply.
inline Circuit compose(const Circuit& a, const Circuit& b) {
  if (!(a.layout == b.layout))
    throw std::invalid_argument("compose: layouts differ");
  Circuit out = a;
  out.append_all(b);
  return out;
}

/// Side-by-side combination; b's qubits are shifted past a's registers.
inline Circuit tensor(const Circuit& a, const Circuit& b) {
  if (a.layout.qubits_per_register != b.layout.qubits_per_register)
    throw std::invalid_argument("tensor: register widths differ");
  if (!a.layout.ancillas.empty() || !b.layout.ancillas.empty())
    throw std::invalid_argument("tensor: ancilla-bearing layouts unsupported");
  Circuit out;
  out.layout.qubits_per_register = a.layout.qubits_per_register;
  out.layout.register_count = a.layout.register_count + b.layout.register_count;
  out.ops = a.ops;
  const int shift = a.layout.register_qubit_count();
  for (GateOp op : b.ops) {
    for (int& q : op.targets) q += shift;
    for (auto& ctl : op.controls) ctl.qubit += shift;
    out.ops.push_back(std::move(op));
  }
  out.scale = a.scale * b.scale;
  return out;
}

/// Qubit-wise exchange of registers i and j as n parallel Swap gates.
inline Circuit register_swap(const RegisterLayout& layout, int i, int j) {
  Circuit out;
  out.layout = layout;
  const auto qi = layout.register_qubits(i);
  const auto qj = layout.register_qubits(j);
  for (int k = 0; k < layout.qubits_per_register; ++k)
    out.append(GateOp::swap(qi[k], qj[k]));
  return out;
}

/// Ry(theta) as a dense single-qubit matrix (used by gate expansions).
inline ComplexMatrix rotation_y(double theta) {
  ComplexMatrix m(2, 2);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

/**
 * Rewrites each ControlledHadamard as Ry(pi/4) * CZ * Ry(-pi/4) on the
 * target (extra controls are carried onto the CZ).  Unitary-preserving.
 */
inline Circuit expand_controlled_hadamards(const Circuit& c) {
  Circuit out;
  out.layout = c.layout;
  out.scale = c.scale;
  for (const auto& op : c.ops) {
    if (op.kind != GateKind::ControlledHadamard) {
      out.append(op);
      continue;
    }
    const int t = op.targets[0];
    out.append(GateOp::generic_unitary({t}, rotation_y(-M_PI / 4.0)));
    GateOp cz{GateKind::CZ, {t}, op.controls, {}, {}};
    out.append(cz);
    out.append(GateOp::generic_unitary({t}, rotation_y(M_PI / 4.0)));
  }
  return out;
}

/**
 * Optional canonicalization of two-control MultiControlledZ0 gates into the
 * X/H-conjugated CCX spelling (serialization aid; semantics unchanged).
 */
inline Circuit expand_mcz_to_ccx(const Circuit& c) {
  Circuit out;
  out.layout = c.layout;
  out.scale = c.scale;
  for (const auto& op : c.ops) {
    if (op.kind != GateKind::MultiControlledZ0 || op.controls.size() != 2) {
      out.append(op);
      continue;
    }
    const int t = op.targets[0];
    out.append(GateOp::x(t));
    out.append(GateOp::h(t));
    out.append(GateOp{GateKind::CCX, {t}, op.controls, {}, {}});
    out.append(GateOp::h(t));
    out.append(GateOp::x(t));
  }
  return out;
}

}  // namespace dql

#endif  // DQL_CIRCUIT_HPP_
