#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "disctower/jet.hpp"
#include "disctower/multipoly.hpp"
#include "disctower/scalar.hpp"

namespace disctower {

// Element types used by the generic algorithms: Scalar, MultiPoly, Jet.

inline Scalar ring_constant_like(const Scalar&, const Scalar& c) { return c; }
inline MultiPoly ring_constant_like(const MultiPoly& x, const Scalar& c) { return MultiPoly::constant(x.arity(), c); }
inline Jet ring_constant_like(const Jet& x, const Scalar& c) { return Jet::constant(x.context(), c, x.precision()); }

inline bool ring_is_zero(const Scalar& x) { return sgn(x) == 0; }
inline bool ring_is_zero(const MultiPoly& x) { return x.is_zero(); }
inline bool ring_is_zero(const Jet& x) { return x.is_zero(); }

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Leading principal minors det(A_1), ..., det(A_n) of a square matrix by
/// Berkowitz's algorithm, which never divides.
template <class T>
std::vector<T> leading_principal_minors(const Matrix<T>& a) {
  const std::size_t n = a.size();
  std::vector<T> minors;
  if (n == 0) return minors;
  const T one = ring_constant_like(a[0][0], Scalar(1));
  const T zero = ring_constant_like(a[0][0], Scalar(0));
  // Characteristic polynomial det(lambda I - A_r), leading coefficient first.
  std::vector<T> c{one};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<T> t;
    t.reserve(r + 2);
    t.push_back(one);
    t.push_back(T(-a[r][r]));
    std::vector<T> v(r, zero);
    for (std::size_t k = 0; k < r; ++k) v[k] = a[k][r];
    for (std::size_t k = 0; k < r; ++k) {
      T dot = zero;
      for (std::size_t l = 0; l < r; ++l) dot = dot + a[r][l] * v[l];
      t.push_back(T(-dot));
      if (k + 1 < r) {
        std::vector<T> w(r, zero);
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t l = 0; l < r; ++l) w[i] = w[i] + a[i][l] * v[l];
        }
        v = std::move(w);
      }
    }
    std::vector<T> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = next[i] + t[i - j] * c[j];
    }
    c = std::move(next);
    minors.push_back((r % 2 == 0) ? T(-c[r + 1]) : c[r + 1]);
  }
  return minors;
}

/// Determinant by expansion over column subsets (exponential in n, used for
/// small oracle matrices only).
template <class T>
T subset_expansion_determinant(const Matrix<T>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  if (n > 20) throw Error(ErrorKind::InvalidArgument, "matrix too large for subset expansion");
  const T zero = ring_constant_like(a[0][0], Scalar(0));
  std::vector<T> dp(std::size_t{1} << n, zero);
  std::vector<bool> reached(dp.size(), false);
  dp[0] = ring_constant_like(a[0][0], Scalar(1));
  reached[0] = true;
  for (std::uint32_t mask = 0; mask < dp.size(); ++mask) {
    if (!reached[mask]) continue;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    if (row == n) continue;
    for (std::size_t col = 0; col < n; ++col) {
      if (mask & (1u << col)) continue;
      // Sign flips once per already-used column to the right of col.
      const int larger = std::popcount(mask >> (col + 1));
      T term = dp[mask] * a[row][col];
      const std::uint32_t next = mask | (1u << col);
      if (larger % 2 == 0) {
        dp[next] = dp[next] + term;
      } else {
        dp[next] = dp[next] - term;
      }
      reached[next] = true;
    }
  }
  return dp.back();
}

}  // namespace disctower
