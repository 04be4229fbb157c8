#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

#include "disctower/error.hpp"
#include "disctower/var_context.hpp"

namespace disctower {

/// Exponent vector over at most kMaxVariables variables; unused slots stay 0.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<int> exps) {
    if (exps.size() > kMaxVariables) throw Error(ErrorKind::InvalidArgument, "too many exponents");
    std::size_t i = 0;
    for (int e : exps) set(i++, e);
  }

  static Monomial variable(std::size_t i, int power = 1) {
    Monomial m;
    m.set(i, power);
    return m;
  }

  int operator[](std::size_t i) const { return e_[i]; }
  int degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, int value) {
    if (value < 0 || value > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorKind::InvalidArgument, "exponent out of range");
    }
    degree_ += value - e_[i];
    e_[i] = static_cast<std::uint16_t>(value);
  }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (e_[i] > other.e_[i]) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.set(i, a.e_[i] + b.e_[i]);
    return r;
  }

  /// Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.set(i, a.e_[i] - b.e_[i]);
    return r;
  }

  /// Sum of exponents over the variables with index < count.
  int degree_below(std::size_t count) const noexcept {
    int d = 0;
    for (std::size_t i = 0; i < count && i < kMaxVariables; ++i) d += e_[i];
    return d;
  }

  /// True when some variable with index >= from has a positive exponent.
  bool involves_from(std::size_t from) const noexcept {
    for (std::size_t i = from; i < kMaxVariables; ++i) {
      if (e_[i] != 0) return true;
    }
    return false;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.e_ == b.e_; }

 private:
  std::array<std::uint16_t, kMaxVariables> e_{};
  int degree_ = 0;
};

/// Graded order: lower total degree first; within a degree, larger exponent of
/// the earlier variable first (x1^2 < x1*x2 < x2^2 in iteration order).
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
};

}  // namespace disctower
