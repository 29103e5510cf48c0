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

#ifndef DQL_RANDOM_HPP_
#define DQL_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "dql/linalg.hpp"

namespace dql {

/**
 * Seeded random source with hand-rolled distributions.
 *
 * std::uniform_real_distribution and friends are implementation-defined, so
 * everything downstream of a seed (sampling, random-with-seed builtins, test
 * fixtures) maps raw mt19937_64 output to doubles explicitly.  Same seed,
 * same bits, on any standard library.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (the cached second value is discarded).
  double gaussian() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex{re, im};
  }

  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

/// Random complex unit vector (Gaussian components, normalized).
inline ComplexVector random_state(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.gaussian_complex();
  return v.normalized();
}

/// Random real unit vector.
inline ComplexVector random_real_state(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = Complex{rng.gaussian(), 0.0};
  return v.normalized();
}

/**
 * Haar-distributed random unitary: Gaussian matrix, rows orthonormalized in
 * order with the positive-norm convention (equivalent to QR with positive
 * diagonal R, which makes the result Haar rather than merely unitary).
 */
inline ComplexMatrix haar_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = rng.gaussian_complex();
  for (std::size_t r = 0; r < dim; ++r) {
    ComplexVector row = g.row(r);
    for (std::size_t p = 0; p < r; ++p) {
      const ComplexVector prev = g.row(p);
      const Complex overlap = prev.dot(row);
      for (std::size_t c = 0; c < dim; ++c) row[c] -= overlap * prev[c];
    }
    row = row.normalized();
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = row[c];
  }
  return g;
}

}  // namespace dql

#endif  // DQL_RANDOM_HPP_
