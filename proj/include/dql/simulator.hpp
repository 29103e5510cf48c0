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

#ifndef DQL_SIMULATOR_HPP_
#define DQL_SIMULATOR_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dql/circuit.hpp"
#include "dql/random.hpp"

namespace dql {

/// Requested state or unitary would exceed the configured qubit cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Post-selection on an outcome whose branch probability is exactly zero.
struct ZeroProbabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultSimulationCap = 22;

/**
 * Dense state vector over the layout's qubits.
 *
 * Amplitude index bits are most-significant-first in qubit order: qubit 0 is
 * the top bit.  With register-major layouts this means amps[c*N + r] is the
 * coefficient of |c> on register 0 and |r> on register 1, matching the
 * column-stacking vectorization convention in linalg.hpp.
 */
struct StateVector {
  int num_qubits = 0;
  std::vector<Complex> amps;

  static StateVector zero_state(int q) {
    StateVector s;
    s.num_qubits = q;
    s.amps.assign(std::size_t{1} << q, Complex{0.0, 0.0});
    s.amps[0] = 1.0;
    return s;
  }

  static StateVector basis_state(int q, std::uint64_t index) {
    StateVector s;
    s.num_qubits = q;
    s.amps.assign(std::size_t{1} << q, Complex{0.0, 0.0});
    s.amps.at(index) = 1.0;
    return s;
  }

  static StateVector from_vector(const ComplexVector& v) {
    int q = 0;
    while ((std::size_t{1} << q) < v.size()) ++q;
    if ((std::size_t{1} << q) != v.size())
      throw std::invalid_argument("state length is not a power of two");
    StateVector s;
    s.num_qubits = q;
    s.amps = v.data();
    return s;
  }

  std::size_t size() const { return amps.size(); }

  std::uint64_t qubit_mask(int q) const {
    return std::uint64_t{1} << (num_qubits - 1 - q);
  }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
  }

  ComplexVector to_vector() const {
    ComplexVector v(size());
    v.data() = amps;
    return v;
  }
};

namespace detail {

struct ControlMasks {
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;
  bool match(std::uint64_t idx) const {
    return (idx & ones) == ones && (idx & zeros) == 0;
  }
};

inline ControlMasks control_masks(const StateVector& s, const GateOp& op) {
  ControlMasks m;
  for (const auto& c : op.controls) {
    if (c.polarity == 1)
      m.ones |= s.qubit_mask(c.qubit);
    else
      m.zeros |= s.qubit_mask(c.qubit);
  }
  return m;
}

inline void apply_single(StateVector& s, const GateOp& op, Complex u00,
                         Complex u01, Complex u10, Complex u11) {
  const std::uint64_t t = s.qubit_mask(op.targets[0]);
  const ControlMasks cm = control_masks(s, op);
  const std::uint64_t size = s.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (i & t) continue;
    if (!cm.match(i)) continue;
    const Complex a = s.amps[i];
    const Complex b = s.amps[i | t];
    s.amps[i] = u00 * a + u01 * b;
    s.amps[i | t] = u10 * a + u11 * b;
  }
}

inline void apply_flip(StateVector& s, const GateOp& op) {
  const std::uint64_t t = s.qubit_mask(op.targets[0]);
  const ControlMasks cm = control_masks(s, op);
  const std::uint64_t size = s.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (i & t) continue;
    if (!cm.match(i)) continue;
    std::swap(s.amps[i], s.amps[i | t]);
  }
}

/// Sign flip where controls match and the target bit equals `fire_on`.
inline void apply_phase_flip(StateVector& s, const GateOp& op, int fire_on) {
  const std::uint64_t t = s.qubit_mask(op.targets[0]);
  const ControlMasks cm = control_masks(s, op);
  const std::uint64_t size = s.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (((i & t) != 0) != (fire_on == 1)) continue;
    if (!cm.match(i)) continue;
    s.amps[i] = -s.amps[i];
  }
}

inline void apply_swap(StateVector& s, std::uint64_t ma, std::uint64_t mb,
                       const ControlMasks& cm) {
  const std::uint64_t size = s.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (!(i & ma) || (i & mb)) continue;  // visit each pair once: a=1, b=0
    if (!cm.match(i)) continue;
    std::swap(s.amps[i], s.amps[i ^ ma ^ mb]);
  }
}

inline void apply_diagonal(StateVector& s, const GateOp& op) {
  const ControlMasks cm = control_masks(s, op);
  const int k = static_cast<int>(op.targets.size());
  std::vector<std::uint64_t> tmask(k);
  for (int j = 0; j < k; ++j) tmask[j] = s.qubit_mask(op.targets[j]);
  const std::uint64_t size = s.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (!cm.match(i)) continue;
    std::uint64_t sub = 0;
    for (int j = 0; j < k; ++j)
      if (i & tmask[j]) sub |= std::uint64_t{1} << (k - 1 - j);
    s.amps[i] *= op.diagonal[sub];
  }
}

inline void apply_generic(StateVector& s, const GateOp& op) {
  const int k = static_cast<int>(op.targets.size());
  const std::size_t dim = std::size_t{1} << k;
  const ControlMasks cm = control_masks(s, op);
  std::uint64_t all_targets = 0;
  for (int t : op.targets) all_targets |= s.qubit_mask(t);
  // offset[sub] = global index bits for local sub-index `sub`
  // (sub's top bit corresponds to targets[0]).
  std::vector<std::uint64_t> offset(dim, 0);
  for (std::size_t sub = 0; sub < dim; ++sub)
    for (int j = 0; j < k; ++j)
      if (sub & (std::uint64_t{1} << (k - 1 - j)))
        offset[sub] |= s.qubit_mask(op.targets[j]);
  std::vector<Complex> in(dim), out(dim);
  const std::uint64_t size = s.size();
  for (std::uint64_t base = 0; base < size; ++base) {
    if (base & all_targets) continue;
    if (!cm.match(base)) continue;
    for (std::size_t sub = 0; sub < dim; ++sub) in[sub] = s.amps[base | offset[sub]];
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < dim; ++c) acc += op.matrix(r, c) * in[c];
      out[r] = acc;
    }
    for (std::size_t sub = 0; sub < dim; ++sub) s.amps[base | offset[sub]] = out[sub];
  }
}

}  // namespace detail

inline void apply_op(StateVector& s, const GateOp& op) {
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  switch (op.kind) {
    case GateKind::Hadamard:
    case GateKind::ControlledHadamard:
      detail::apply_single(s, op, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
      return;
    case GateKind::PauliX:
    case GateKind::CX:
    case GateKind::CCX:
      detail::apply_flip(s, op);
      return;
    case GateKind::PauliZ:
    case GateKind::CZ:
      detail::apply_phase_flip(s, op, 1);
      return;
    case GateKind::MultiControlledZ0:
      detail::apply_phase_flip(s, op, 0);
      return;
    case GateKind::Swap:
      detail::apply_swap(s, s.qubit_mask(op.targets[0]),
                         s.qubit_mask(op.targets[1]),
                         detail::control_masks(s, op));
      return;
    case GateKind::RegisterSwap: {
      const int half = static_cast<int>(op.targets.size()) / 2;
      const auto cm = detail::control_masks(s, op);
      for (int j = 0; j < half; ++j)
        detail::apply_swap(s, s.qubit_mask(op.targets[j]),
                           s.qubit_mask(op.targets[j + half]), cm);
      return;
    }
    case GateKind::DiagonalUnitary:
      detail::apply_diagonal(s, op);
      return;
    case GateKind::GenericUnitary:
      detail::apply_generic(s, op);
      return;
  }
  throw std::logic_error("unhandled gate kind");
}

inline void run_inplace(const Circuit& c, StateVector& s) {
  if (s.num_qubits != c.total_qubits())
    throw std::invalid_argument("state/circuit qubit count mismatch");
  for (const auto& op : c.ops) apply_op(s, op);
  if (c.scale != Complex{1.0, 0.0})
    for (auto& a : s.amps) a *= c.scale;
}

/// Runs the circuit on |0...0> (norm-preserving for unit-scale circuits).
inline StateVector run(const Circuit& c, int cap = kDefaultSimulationCap) {
  if (c.total_qubits() > cap)
    throw CapacityError("circuit needs " + std::to_string(c.total_qubits()) +
                        " qubits, cap is " + std::to_string(cap));
  StateVector s = StateVector::zero_state(c.total_qubits());
  run_inplace(c, s);
  return s;
}

inline StateVector run_on(const Circuit& c, StateVector s,
                          int cap = kDefaultSimulationCap) {
  if (c.total_qubits() > cap) throw CapacityError("qubit cap exceeded");
  run_inplace(c, s);
  return s;
}

inline constexpr int kDefaultUnitaryCap = 12;

/**
 * Dense unitary of a circuit, by running it on every basis state.  Capped
 * separately from simulation (default 12 qubits) because the output is a
 * dense 2^q x 2^q matrix.
 */
inline ComplexMatrix unitary(const Circuit& c, int cap = kDefaultUnitaryCap) {
  const int q = c.total_qubits();
  if (q > cap)
    throw CapacityError("unitary extraction for " + std::to_string(q) +
                        " qubits exceeds cap " + std::to_string(cap));
  const std::size_t dim = std::size_t{1} << q;
  ComplexMatrix m(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis_state(q, col);
    run_inplace(c, s);
    for (std::size_t row = 0; row < dim; ++row) m(row, col) = s.amps[row];
  }
  return m;
}

struct PostSelectResult {
  StateVector state;  // renormalized, same qubit count, off-branch amps zero
  double probability = 0.0;
};

/**
 * Projects `qubits` onto the given bit values (qubits[i] -> bits[i]) and
 * renormalizes.  Throws ZeroProbabilityError when the branch has exactly
 * zero weight, so callers cannot mistake an impossible outcome for data.
 */
inline PostSelectResult postselect(const StateVector& s,
                                   const std::vector<int>& qubits,
                                   const std::vector<int>& bits) {
  if (qubits.size() != bits.size())
    throw std::invalid_argument("postselect: qubit/bit count mismatch");
  std::uint64_t ones = 0, mask = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const std::uint64_t m = s.qubit_mask(qubits[i]);
    mask |= m;
    if (bits[i]) ones |= m;
  }
  double prob = 0.0;
  for (std::uint64_t i = 0; i < s.size(); ++i)
    if ((i & mask) == ones) prob += std::norm(s.amps[i]);
  if (prob == 0.0)
    throw ZeroProbabilityError("post-selected branch has zero probability");
  PostSelectResult out;
  out.probability = prob;
  out.state.num_qubits = s.num_qubits;
  out.state.amps.assign(s.size(), Complex{0.0, 0.0});
  const double inv = 1.0 / std::sqrt(prob);
  for (std::uint64_t i = 0; i < s.size(); ++i)
    if ((i & mask) == ones) out.state.amps[i] = s.amps[i] * inv;
  return out;
}

inline PostSelectResult postselect_zeros(const StateVector& s,
                                         const std::vector<int>& qubits) {
  return postselect(s, qubits, std::vector<int>(qubits.size(), 0));
}

/**
 * Extracts the state of `qubits` (in the given order) assuming every other
 * qubit is deterministically |0>; throws otherwise.  Used after full
 * post-selection to hand back a register-sized state.
 */
inline StateVector reduce_to_qubits(const StateVector& s,
                                    const std::vector<int>& qubits,
                                    double tol = 1e-12) {
  const int k = static_cast<int>(qubits.size());
  std::uint64_t keep_mask = 0;
  for (int q : qubits) keep_mask |= s.qubit_mask(q);
  StateVector out;
  out.num_qubits = k;
  out.amps.assign(std::size_t{1} << k, Complex{0.0, 0.0});
  for (std::uint64_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.amps[i]) <= tol) continue;
    if (i & ~keep_mask)
      throw std::invalid_argument(
          "reduce_to_qubits: state has support outside the kept qubits");
    std::uint64_t sub = 0;
    for (int j = 0; j < k; ++j)
      if (i & s.qubit_mask(qubits[j])) sub |= std::uint64_t{1} << (k - 1 - j);
    out.amps[sub] = s.amps[i];
  }
  return out;
}

/// |<a|b>|^2 for unit vectors.
inline double fidelity(const ComplexVector& a, const ComplexVector& b) {
  return std::norm(a.dot(b));
}

/**
 * Measurement histogram over `qubits` (outcome bit i, most significant
 * first, is qubit qubits[i]).  Multinomial sampling by CDF inversion over
 * the marginal distribution; bit-for-bit reproducible for a given seed.
 */
inline std::map<std::uint64_t, std::uint64_t> sample(
    const StateVector& s, const std::vector<int>& qubits, std::uint64_t shots,
    std::uint64_t seed) {
  const int k = static_cast<int>(qubits.size());
  if (k > 26) throw CapacityError("sampling over more than 26 qubits");
  std::vector<double> probs(std::size_t{1} << k, 0.0);
  for (std::uint64_t i = 0; i < s.size(); ++i) {
    const double p = std::norm(s.amps[i]);
    if (p == 0.0) continue;
    std::uint64_t sub = 0;
    for (int j = 0; j < k; ++j)
      if (i & s.qubit_mask(qubits[j])) sub |= std::uint64_t{1} << (k - 1 - j);
    probs[sub] += p;
  }
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  Rng rng(seed);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t outcome =
        it == cdf.end() ? cdf.size() - 1 : static_cast<std::uint64_t>(it - cdf.begin());
    ++hist[outcome];
  }
  return hist;
}

}  // namespace dql

#endif  // DQL_SIMULATOR_HPP_
