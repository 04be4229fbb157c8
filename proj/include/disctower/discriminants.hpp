#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/ring_algorithms.hpp"
#include "disctower/uni_over_jets.hpp"

namespace disctower {

/// Delta_1..Delta_p; entry(j) is 1-based to match the usual indexing.
struct GDiscVector {
  std::vector<Jet> entries;

  int degree() const noexcept { return static_cast<int>(entries.size()); }
  const Jet& entry(int j) const {
    if (j < 1 || j > degree()) throw Error(ErrorKind::IndexOutOfRange, "discriminant index out of range");
    return entries[static_cast<std::size_t>(j - 1)];
  }
};

struct DistinctRootReport {
  enum class Status { Determined, Inconclusive };
  Status status = Status::Determined;
  int count = 0;  // number of distinct roots when Determined
  int index = 0;  // first ambiguous Delta index when Inconclusive

  static DistinctRootReport determined(int d) { return {Status::Determined, d, 0}; }
  static DistinctRootReport inconclusive(int j) { return {Status::Inconclusive, 0, j}; }
  friend bool operator==(const DistinctRootReport&, const DistinctRootReport&) = default;
};

/// Power sums s_0..s_upTo of the roots of T^p + a_1 T^(p-1) + ... + a_p,
/// from the monic coefficient vector (leading 1 first).
template <class T>
std::vector<T> power_sums_from_coeffs(const std::vector<T>& coeffs, int up_to) {
  const int p = static_cast<int>(coeffs.size()) - 1;
  const T zero = ring_constant_like(coeffs[0], Scalar(0));
  std::vector<T> s;
  s.reserve(static_cast<std::size_t>(up_to) + 1);
  s.push_back(ring_constant_like(coeffs[0], Scalar(p)));
  for (int k = 1; k <= up_to; ++k) {
    T acc = zero;
    if (k <= p) acc = acc - coeffs[static_cast<std::size_t>(k)] * Scalar(k);
    for (int j = 1; j <= std::min(k - 1, p); ++j) {
      acc = acc - coeffs[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
    }
    s.push_back(std::move(acc));
  }
  return s;
}

/// Delta_1..Delta_p as leading principal minors of the power-sum Hankel matrix:
/// Delta_j is the minor of size p - j + 1.
template <class T>
std::vector<T> gdisc_from_coeffs(const std::vector<T>& coeffs) {
  const int p = static_cast<int>(coeffs.size()) - 1;
  if (p < 1) return {};
  const std::vector<T> s = power_sums_from_coeffs(coeffs, 2 * p - 2);
  Matrix<T> h(static_cast<std::size_t>(p), std::vector<T>(static_cast<std::size_t>(p), s[0]));
  for (int k = 0; k < p; ++k) {
    for (int l = 0; l < p; ++l) h[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = s[static_cast<std::size_t>(k + l)];
  }
  std::vector<T> minors = leading_principal_minors(h);
  std::vector<T> out;
  for (int j = 1; j <= p; ++j) out.push_back(minors[static_cast<std::size_t>(p - j)]);
  return out;
}

/// (-1)^(p(p-1)/2) Res(f, f') for monic f through the Sylvester matrix.
template <class T>
T sylvester_discriminant(const std::vector<T>& coeffs) {
  const int p = static_cast<int>(coeffs.size()) - 1;
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "discriminant needs degree at least 1");
  if (p == 1) return ring_constant_like(coeffs[0], Scalar(1));
  std::vector<T> deriv;
  for (int j = 0; j < p; ++j) deriv.push_back(coeffs[static_cast<std::size_t>(j)] * Scalar(p - j));
  const std::size_t size = static_cast<std::size_t>(2 * p - 1);
  const T zero = ring_constant_like(coeffs[0], Scalar(0));
  Matrix<T> m(size, std::vector<T>(size, zero));
  for (std::size_t r = 0; r < static_cast<std::size_t>(p - 1); ++r) {
    for (std::size_t j = 0; j < coeffs.size(); ++j) m[r][r + j] = coeffs[j];
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(p); ++r) {
    for (std::size_t j = 0; j < deriv.size(); ++j) m[static_cast<std::size_t>(p - 1) + r][r + j] = deriv[j];
  }
  T res = subset_expansion_determinant(m);
  if ((p * (p - 1) / 2) % 2 == 1) res = T(-res);
  return res;
}

namespace detail {

inline void require_monic(const UniOverJets& f) {
  if (!f.is_monic()) throw Error(ErrorKind::NotMonic, "polynomial is not monic");
}

inline std::vector<MultiPoly> exact_bodies(const UniOverJets& f) {
  std::vector<MultiPoly> out;
  for (const Jet& c : f.coeffs()) out.push_back(c.body());
  return out;
}

// Exact coefficients are polynomials, so compute without truncation and cut
// once at the end; the result stays certified whenever it fits below N.
template <class Fn>
std::vector<Jet> compute_on_jets(const UniOverJets& f, Fn&& fn) {
  std::vector<Jet> out;
  if (f.exact()) {
    for (MultiPoly& poly : fn(exact_bodies(f))) out.push_back(Jet::from_poly(f.context(), std::move(poly), f.precision()));
  } else {
    out = fn(f.coeffs());
  }
  return out;
}

}  // namespace detail

inline std::vector<Jet> newton_power_sums(const UniOverJets& f, int up_to) {
  detail::require_monic(f);
  if (up_to < 0) throw Error(ErrorKind::InvalidArgument, "negative power-sum bound");
  return detail::compute_on_jets(f, [&](const auto& coeffs) { return power_sums_from_coeffs(coeffs, up_to); });
}

inline GDiscVector generalized_discriminants(const UniOverJets& f) {
  detail::require_monic(f);
  return GDiscVector{detail::compute_on_jets(f, [](const auto& coeffs) { return gdisc_from_coeffs(coeffs); })};
}

inline Jet classical_discriminant_oracle(const UniOverJets& f) {
  detail::require_monic(f);
  if (f.exact()) {
    return Jet::from_poly(f.context(), sylvester_discriminant(detail::exact_bodies(f)), f.precision());
  }
  return sylvester_discriminant(f.coeffs());
}

/// Sum over (j-1)-subsets R of root indices of prod_{k<l, k,l not in R} (T_k - T_l)^2.
inline Scalar gdisc_from_roots_oracle(const std::vector<Scalar>& roots, int j) {
  const int p = static_cast<int>(roots.size());
  if (j < 1 || j > p) throw Error(ErrorKind::IndexOutOfRange, "discriminant index out of range");
  if (p > 24) throw Error(ErrorKind::InvalidArgument, "too many roots for the subset oracle");
  Scalar total = 0;
  for (std::uint32_t removed = 0; removed < (1u << p); ++removed) {
    if (std::popcount(removed) != j - 1) continue;
    Scalar prod = 1;
    for (int k = 0; k < p; ++k) {
      if (removed & (1u << k)) continue;
      for (int l = k + 1; l < p; ++l) {
        if (removed & (1u << l)) continue;
        const Scalar d = roots[static_cast<std::size_t>(k)] - roots[static_cast<std::size_t>(l)];
        prod *= d * d;
      }
    }
    total += prod;
  }
  return total;
}

/// First index whose Delta is provably nonzero. Entries that vanish are skipped
/// only when certified (exact); an uncertified zero stops the scan.
struct DiscriminantScan {
  bool found = false;
  int index = 0;  // the nonzero index if found, else the ambiguous one
};

inline DiscriminantScan scan_discriminants(const GDiscVector& d) {
  for (int k = 1; k <= d.degree(); ++k) {
    const Jet& e = d.entry(k);
    if (jet_order(e)) return {true, k};
    if (!e.exact()) return {false, k};
  }
  return {false, d.degree()};
}

inline DistinctRootReport count_distinct_roots(const UniOverJets& f) {
  detail::require_monic(f);
  const int p = f.degree();
  if (p == 0) return DistinctRootReport::determined(0);
  const DiscriminantScan scan = scan_discriminants(generalized_discriminants(f));
  if (!scan.found) return DistinctRootReport::inconclusive(scan.index);
  return DistinctRootReport::determined(p - scan.index + 1);
}

}  // namespace disctower
