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

#ifndef DQL_LINALG_HPP_
#define DQL_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dql {

using Complex = std::complex<double>;

/**
 * Dense complex column vector.
 *
 * This is deliberately a thin value type: the interesting algebra lives in
 * the free functions below (vectorize / gather / multiply), which implement
 * the operator-rewriting calculus the rest of the library is built on.
 */
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t size) : data_(size, Complex{0.0, 0.0}) {}
  ComplexVector(std::initializer_list<Complex> init) : data_(init) {}

  static ComplexVector zero(std::size_t size) { return ComplexVector(size); }

  std::size_t size() const { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : data_) s += std::norm(a);
    return std::sqrt(s);
  }

  ComplexVector& operator*=(Complex c) {
    for (auto& a : data_) a *= c;
    return *this;
  }

  ComplexVector operator+(const ComplexVector& other) const {
    require_same_size(other);
    ComplexVector out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = data_[i] + other[i];
    return out;
  }

  ComplexVector operator-(const ComplexVector& other) const {
    require_same_size(other);
    ComplexVector out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = data_[i] - other[i];
    return out;
  }

  ComplexVector operator*(Complex c) const {
    ComplexVector out = *this;
    out *= c;
    return out;
  }

  /// Hermitian inner product <this|other> (conjugate-linear in *this*).
  Complex dot(const ComplexVector& other) const {
    require_same_size(other);
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < size(); ++i) s += std::conj(data_[i]) * other[i];
    return s;
  }

  double max_abs_diff(const ComplexVector& other) const {
    require_same_size(other);
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      m = std::max(m, std::abs(data_[i] - other[i]));
    return m;
  }

  ComplexVector normalized() const {
    double n = norm();
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    ComplexVector out = *this;
    out *= Complex{1.0 / n, 0.0};
    return out;
  }

 private:
  void require_same_size(const ComplexVector& other) const {
    if (size() != other.size())
      throw std::invalid_argument("vector size mismatch: " +
                                  std::to_string(size()) + " vs " +
                                  std::to_string(other.size()));
  }

  std::vector<Complex> data_;
};

/**
 * Dense complex matrix, row-major storage, rectangular shapes permitted.
 *
 * Storage order is an internal detail; the vectorization convention exposed
 * by vectorize()/devectorize() is column-stacking and is independent of it.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  ComplexMatrix operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_)
      throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Complex a = (*this)(r, k);
        if (a == Complex{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < other.cols_; ++c)
          out(r, c) += a * other(k, c);
      }
    }
    return out;
  }

  ComplexVector operator*(const ComplexVector& v) const {
    if (cols_ != v.size())
      throw std::invalid_argument("matrix-vector shape mismatch");
    ComplexVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Complex s{0.0, 0.0};
      for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
      out[r] = s;
    }
    return out;
  }

  ComplexMatrix operator+(const ComplexMatrix& other) const {
    require_same_shape(other);
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      out.data_[i] = data_[i] + other.data_[i];
    return out;
  }

  ComplexMatrix operator-(const ComplexMatrix& other) const {
    require_same_shape(other);
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      out.data_[i] = data_[i] - other.data_[i];
    return out;
  }

  ComplexMatrix operator*(Complex c) const {
    ComplexMatrix out = *this;
    for (auto& a : out.data_) a *= c;
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  ComplexMatrix dagger() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  double max_abs_diff(const ComplexMatrix& other) const {
    require_same_shape(other);
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& a : data_) m = std::max(m, std::abs(a));
    return m;
  }

  bool is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    return (dagger() * (*this)).max_abs_diff(identity(rows_)) <= tol;
  }

  ComplexVector row(std::size_t r) const {
    ComplexVector out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
  }

  ComplexVector col(std::size_t c) const {
    ComplexVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

 private:
  void require_same_shape(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex f = a(ar, ac);
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
    }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

/**
 * Column-stacking vectorization: vectorize(M)[c*rows + r] = M(r, c).
 *
 * For [[a,b],[c,d]] this yields (a, c, b, d)^T.  Read as a two-register
 * state, the *first* (most significant) register carries the column index:
 * vectorize(M) = sum_{r,c} M(r,c) |c>|r>.  Every identity below (and the
 * circuit-level conventions) assumes exactly this ordering.
 */
inline ComplexVector vectorize(const ComplexMatrix& m) {
  ComplexVector out(m.rows() * m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out[c * m.rows() + r] = m(r, c);
  return out;
}

inline ComplexMatrix devectorize(const ComplexVector& v, std::size_t rows,
                                 std::size_t cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("devectorize: length " +
                                std::to_string(v.size()) + " != " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  ComplexMatrix out(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = v[c * rows + r];
  return out;
}

/// Unnormalized vectorized identity: ones at positions k*dim + k.
inline ComplexVector vec_identity(std::size_t dim) {
  ComplexVector out(dim * dim);
  for (std::size_t k = 0; k < dim; ++k) out[k * dim + k] = 1.0;
  return out;
}

/// Quantum-state form of the vectorized identity, norm 1 (factor 1/sqrt(dim)).
inline ComplexVector vec_identity_state(std::size_t dim) {
  ComplexVector out = vec_identity(dim);
  out *= Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0};
  return out;
}

/**
 * Exact gathering contraction.
 *
 * Applies the rectangular map I_dim (x) vec_identity(dim)^T (x) I_dim to
 * vec_a (x) vec_b without materializing it.  For vec_a = vectorize(A) and
 * vec_b = vectorize(B) the result is vectorize(B*A): a tensor product of two
 * vectorized operators is contracted into the vectorization of their
 * (order-reversed) matrix product.  No normalization is applied.
 */
inline ComplexVector gather_exact(const ComplexVector& vec_a,
                                  const ComplexVector& vec_b, std::size_t dim) {
  if (vec_a.size() != dim * dim || vec_b.size() != dim * dim)
    throw std::invalid_argument("gather_exact: operands must have length dim^2");
  ComplexVector out(dim * dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t rp = 0; rp < dim; ++rp) {
      Complex s{0.0, 0.0};
      // Contract A's row index against B's column index.
      for (std::size_t k = 0; k < dim; ++k)
        s += vec_a[c * dim + k] * vec_b[k * dim + rp];
      out[c * dim + rp] = s;
    }
  return out;
}

/// Materialized gathering map (dim^2 x dim^4); oracle/testing use.
inline ComplexMatrix gather_matrix(std::size_t dim) {
  ComplexMatrix mid(1, dim * dim);
  const ComplexVector vi = vec_identity(dim);
  for (std::size_t i = 0; i < dim * dim; ++i) mid(0, i) = vi[i];
  return kron(kron(ComplexMatrix::identity(dim), mid),
              ComplexMatrix::identity(dim));
}

/**
 * Exact multiplication contraction.
 *
 * Applies I_dim (x) v^T to vec_at; for vec_at = vectorize(A^T) the result is
 * the matrix-vector product A*v.  The plain transpose (no conjugation) is
 * intentional and load-bearing.
 */
inline ComplexVector multiply_exact(const ComplexVector& vec_at,
                                    const ComplexVector& v) {
  const std::size_t dim = v.size();
  if (vec_at.size() != dim * dim)
    throw std::invalid_argument("multiply_exact: operand must have length dim^2");
  ComplexVector out(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    Complex s{0.0, 0.0};
    for (std::size_t r = 0; r < dim; ++r) s += v[r] * vec_at[c * dim + r];
    out[c] = s;
  }
  return out;
}

/// Materialized multiplication map (dim x dim^2); oracle/testing use.
inline ComplexMatrix multiply_matrix(const ComplexVector& v) {
  ComplexMatrix vt(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vt(0, i) = v[i];
  return kron(ComplexMatrix::identity(v.size()), vt);
}

}  // namespace dql

#endif  // DQL_LINALG_HPP_
