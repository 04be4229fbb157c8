#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/jet.hpp"

namespace disctower {

/// Invertible linear substitution acting on the contiguous block of variables
/// [start, start + size). Applying it to F gives F(Mx) on that block.
class LinearChange {
 public:
  LinearChange() = default;
  LinearChange(std::size_t start, ScalarMatrix matrix) : start_(start), matrix_(std::move(matrix)) {
    for (const auto& row : matrix_) {
      if (row.size() != matrix_.size()) throw Error(ErrorKind::InvalidArgument, "linear change matrix must be square");
    }
    if (start_ + matrix_.size() > kMaxVariables) throw Error(ErrorKind::IndexOutOfRange, "block exceeds variable range");
    if (sgn(determinant(matrix_)) == 0) throw Error(ErrorKind::SingularMatrix, "linear change is not invertible");
  }

  static LinearChange identity(std::size_t start, std::size_t size) {
    ScalarMatrix m(size, std::vector<Scalar>(size, Scalar(0)));
    for (std::size_t k = 0; k < size; ++k) m[k][k] = 1;
    return LinearChange(start, std::move(m));
  }

  std::size_t start() const noexcept { return start_; }
  std::size_t size() const noexcept { return matrix_.size(); }
  const ScalarMatrix& matrix() const noexcept { return matrix_; }

  bool is_identity() const {
    for (std::size_t r = 0; r < matrix_.size(); ++r) {
      for (std::size_t c = 0; c < matrix_.size(); ++c) {
        if (matrix_[r][c] != (r == c ? 1 : 0)) return false;
      }
    }
    return true;
  }

  /// Full arity x arity matrix, identity outside the block.
  ScalarMatrix embed(std::size_t arity) const {
    if (start_ + size() > arity) throw Error(ErrorKind::IndexOutOfRange, "block exceeds context arity");
    ScalarMatrix m(arity, std::vector<Scalar>(arity, Scalar(0)));
    for (std::size_t k = 0; k < arity; ++k) m[k][k] = 1;
    for (std::size_t r = 0; r < size(); ++r) {
      for (std::size_t c = 0; c < size(); ++c) m[start_ + r][start_ + c] = matrix_[r][c];
    }
    return m;
  }

  LinearChange inverse() const { return LinearChange(start_, invert(matrix_)); }

  friend bool operator==(const LinearChange&, const LinearChange&) = default;

  static Scalar determinant(ScalarMatrix m) {
    const std::size_t n = m.size();
    Scalar det = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
      if (pivot == n) return Scalar(0);
      if (pivot != col) {
        std::swap(m[pivot], m[col]);
        det = -det;
      }
      det *= m[col][col];
      for (std::size_t r = col + 1; r < n; ++r) {
        if (sgn(m[r][col]) == 0) continue;
        const Scalar factor = m[r][col] / m[col][col];
        for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
      }
    }
    return det;
  }

  static ScalarMatrix invert(const ScalarMatrix& input) {
    const std::size_t n = input.size();
    ScalarMatrix a = input;
    ScalarMatrix inv(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::size_t k = 0; k < n; ++k) inv[k][k] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
      if (pivot == n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
      std::swap(a[pivot], a[col]);
      std::swap(inv[pivot], inv[col]);
      const Scalar p = a[col][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[col][c] /= p;
        inv[col][c] /= p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || sgn(a[r][col]) == 0) continue;
        const Scalar factor = a[r][col];
        for (std::size_t c = 0; c < n; ++c) {
          a[r][c] -= factor * a[col][c];
          inv[r][c] -= factor * inv[col][c];
        }
      }
    }
    return inv;
  }

 private:
  std::size_t start_ = 0;
  ScalarMatrix matrix_;
};

inline ScalarMatrix identity_matrix(std::size_t n) {
  ScalarMatrix m(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t k = 0; k < n; ++k) m[k][k] = 1;
  return m;
}

inline ScalarMatrix matrix_product(const ScalarMatrix& a, const ScalarMatrix& b) {
  const std::size_t n = a.size();
  ScalarMatrix r(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

/// a(L x): precision is unchanged because the substitution is homogeneous linear.
inline Jet jet_substitute_linear(const Jet& a, const LinearChange& change) {
  if (change.is_identity()) return a;
  return jet_substitute_matrix(a, change.embed(a.arity()));
}

}  // namespace disctower
