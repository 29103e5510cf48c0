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

#ifndef DQL_PAULI_HPP_
#define DQL_PAULI_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dql/linalg.hpp"

namespace dql {

/// Reverses the lowest `bits` bits of `value` (bit 0 <-> bit bits-1, ...).
inline std::uint64_t bit_reverse(std::uint64_t value, int bits) {
  std::uint64_t out = 0;
  for (int i = 0; i < bits; ++i)
    if ((value >> i) & 1u) out |= std::uint64_t{1} << (bits - 1 - i);
  return out;
}

inline int popcount64(std::uint64_t v) {
  int c = 0;
  for (; v; v &= v - 1) ++c;
  return c;
}

/**
 * A tensor product of single-qubit I/X/Z factors on n qubits.
 *
 * Bit k of x_mask (z_mask) puts an X (Z) on factor k, where factor 0 is the
 * *leftmost* tensor slot.  Labels therefore use the least-significant-bit-
 * on-the-left encoding: pauli_x_string(1, 2) is X (x) I.  Amplitude indices
 * in this library are most-significant-first (qubit 0 is the top index bit),
 * so the index-space action of factor k lives at index bit n-1-k; the
 * bit-reversal is confined to this type.
 *
 * When both masks touch the same qubit the factor is taken as Z*X (X applied
 * first).  Only the pure-X and pure-Z cases, which are Hermitian, are used
 * by the planner.
 */
struct PauliString {
  int n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }

  /// XOR of amplitude indices effected by the X part.
  std::uint64_t index_flip_mask() const { return bit_reverse(x_mask, n); }

  /// Index mask whose parity with a basis index gives the Z sign.
  std::uint64_t index_phase_mask() const { return bit_reverse(z_mask, n); }

  /// Product of two strings with the phase dropped; exact for X-only inputs.
  PauliString operator*(const PauliString& other) const {
    if (n != other.n) throw std::invalid_argument("pauli length mismatch");
    return PauliString{n, x_mask ^ other.x_mask, z_mask ^ other.z_mask};
  }

  bool operator==(const PauliString& other) const {
    return n == other.n && x_mask == other.x_mask && z_mask == other.z_mask;
  }

  std::string label() const {
    std::string s;
    for (int k = 0; k < n; ++k) {
      const bool x = (x_mask >> k) & 1u;
      const bool z = (z_mask >> k) & 1u;
      s += x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
    }
    return s;
  }

  ComplexMatrix as_matrix() const {
    const std::size_t dim = std::size_t{1} << n;
    const std::uint64_t flip = index_flip_mask();
    const std::uint64_t phase = index_phase_mask();
    ComplexMatrix m(dim, dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
      const std::uint64_t row = col ^ flip;
      const double sign = (popcount64(row & phase) & 1) ? -1.0 : 1.0;
      m(row, col) = sign;
    }
    return m;
  }

  /// Applies the string to a length-2^n vector (same math as as_matrix).
  ComplexVector apply(const ComplexVector& v) const {
    const std::size_t dim = std::size_t{1} << n;
    if (v.size() != dim) throw std::invalid_argument("pauli apply: bad length");
    const std::uint64_t flip = index_flip_mask();
    const std::uint64_t phase = index_phase_mask();
    ComplexVector out(dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
      const std::uint64_t row = col ^ flip;
      const double sign = (popcount64(row & phase) & 1) ? -1.0 : 1.0;
      out[row] = sign * v[col];
    }
    return out;
  }
};

/// The j-th X-type string: bit k of j selects X on factor k (LSB leftmost).
inline PauliString pauli_x_string(std::uint64_t j, int n) {
  if (n <= 0 || n > 63) throw std::invalid_argument("pauli_x_string: bad n");
  if (j >> n) throw std::invalid_argument("pauli_x_string: index out of range");
  return PauliString{n, j, 0};
}

/**
 * The X-type string whose matrix XORs amplitude indices by `mask`.
 *
 * This is the bit-reversed label: synthesized gathering/multiplier operators
 * sum coefficient j against index_x_string(j, n) so that their defining
 * first rows come out exactly as vec_identity^T / v^T.
 */
inline PauliString index_x_string(std::uint64_t mask, int n) {
  return pauli_x_string(bit_reverse(mask, n), n);
}

}  // namespace dql

#endif  // DQL_PAULI_HPP_
