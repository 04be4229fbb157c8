#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/multipoly.hpp"
#include "disctower/var_context.hpp"

namespace disctower {

/// Truncated power series: a polynomial body known modulo (x)^N.
///
/// `exact` records that the body is the whole series (a polynomial of degree
/// < N that nothing was ever truncated away from). Only exact jets let callers
/// certify that something vanishes identically.
class Jet {
 public:
  Jet() = default;
  Jet(ContextPtr ctx, MultiPoly body, int precision, bool exact = false)
      : ctx_(std::move(ctx)), precision_(precision) {
    if (!ctx_) throw Error(ErrorKind::InvalidArgument, "jet without context");
    if (precision < 1) throw Error(ErrorKind::InvalidArgument, "jet precision must be positive");
    if (body.arity() != ctx_->arity()) throw Error(ErrorKind::ContextMismatch, "body arity differs from context");
    bool dropped = false;
    body_ = body.truncated(precision, &dropped);
    exact_ = exact && !dropped;
  }

  /// Jet of a polynomial known exactly; stays exact when its degree is < N.
  static Jet from_poly(ContextPtr ctx, MultiPoly poly, int precision) {
    return Jet(std::move(ctx), std::move(poly), precision, true);
  }
  static Jet zero(ContextPtr ctx, int precision) {
    const std::size_t n = ctx->arity();
    return Jet(std::move(ctx), MultiPoly(n), precision, true);
  }
  static Jet constant(ContextPtr ctx, const Scalar& c, int precision) {
    const std::size_t n = ctx->arity();
    return Jet(std::move(ctx), MultiPoly::constant(n, c), precision, true);
  }
  static Jet variable(ContextPtr ctx, std::size_t i, int precision) {
    const std::size_t n = ctx->arity();
    return Jet(std::move(ctx), MultiPoly::variable(n, i), precision, true);
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  const MultiPoly& body() const noexcept { return body_; }
  int precision() const noexcept { return precision_; }
  bool exact() const noexcept { return exact_; }
  std::size_t arity() const noexcept { return body_.arity(); }

  bool is_zero() const noexcept { return body_.is_zero(); }
  /// Zero as a genuine series, not just at the stored precision.
  bool is_exact_zero() const noexcept { return exact_ && body_.is_zero(); }
  Scalar constant_term() const { return body_.constant_term(); }

  friend bool operator==(const Jet& a, const Jet& b) {
    return same_context(a.ctx_, b.ctx_) && a.precision_ == b.precision_ && a.exact_ == b.exact_ &&
           a.body_ == b.body_;
  }

 private:
  ContextPtr ctx_;
  MultiPoly body_;
  int precision_ = 1;
  bool exact_ = false;
};

inline void check_same_context(const Jet& a, const Jet& b) {
  if (!same_context(a.context(), b.context())) {
    throw Error(ErrorKind::ContextMismatch, "jets live over different variable contexts");
  }
}

inline Jet jet_add(const Jet& a, const Jet& b) {
  check_same_context(a, b);
  return Jet(a.context(), a.body() + b.body(), std::min(a.precision(), b.precision()), a.exact() && b.exact());
}

inline Jet jet_sub(const Jet& a, const Jet& b) {
  check_same_context(a, b);
  return Jet(a.context(), a.body() - b.body(), std::min(a.precision(), b.precision()), a.exact() && b.exact());
}

inline Jet jet_neg(const Jet& a) { return Jet(a.context(), -a.body(), a.precision(), a.exact()); }

inline Jet jet_scale(const Jet& a, const Scalar& s) {
  return Jet(a.context(), a.body() * s, a.precision(), a.exact());
}

inline Jet jet_mul(const Jet& a, const Jet& b) {
  check_same_context(a, b);
  const int n = std::min(a.precision(), b.precision());
  bool dropped = false;
  MultiPoly body = MultiPoly::multiply(a.body(), b.body(), n, &dropped);
  return Jet(a.context(), std::move(body), n, a.exact() && b.exact() && !dropped);
}

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator-(const Jet& a) { return jet_neg(a); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator*(const Jet& a, const Scalar& s) { return jet_scale(a, s); }
inline Jet operator*(const Scalar& s, const Jet& a) { return jet_scale(a, s); }

/// Lowest total degree of a stored term; nullopt means zero at this precision.
inline std::optional<int> jet_order(const Jet& a) { return a.body().order(); }

inline Jet jet_truncate(const Jet& a, int precision) {
  if (precision > a.precision()) {
    throw Error(ErrorKind::InvalidArgument, "cannot truncate a jet to a higher precision");
  }
  return Jet(a.context(), a.body(), precision, a.exact());
}

/// Changes the declared precision. Raising it is only sound for exact jets.
inline Jet jet_with_precision(const Jet& a, int precision) {
  if (precision <= a.precision()) return jet_truncate(a, precision);
  if (!a.exact()) throw Error(ErrorKind::InvalidArgument, "cannot raise the precision of an inexact jet");
  return Jet(a.context(), a.body(), precision, true);
}

/// a * m. Knowing a mod (x)^N gives a*m mod (x)^(N + deg m).
inline Jet jet_mul_monomial(const Jet& a, const Monomial& m, const Scalar& c = Scalar(1)) {
  MultiPoly prod = MultiPoly::multiply(a.body(), MultiPoly::monomial(a.arity(), m, c), -1);
  return Jet(a.context(), std::move(prod), a.precision() + m.degree(), a.exact());
}

inline Jet jet_invert_unit(const Jet& a) {
  const Scalar a0 = a.constant_term();
  if (sgn(a0) == 0) throw Error(ErrorKind::NotAUnit, "constant term is zero");
  const int n = a.precision();
  const std::size_t arity = a.arity();
  const Scalar inv0 = 1 / a0;
  // a = a0 (1 - r) with ord r >= 1, so 1/a = (1/a0) * sum_{k<N} r^k.
  MultiPoly r = MultiPoly::constant(arity, Scalar(1)) - a.body() * inv0;
  MultiPoly sum = MultiPoly::constant(arity, Scalar(1));
  MultiPoly power = sum;
  for (int k = 1; k < n && !r.is_zero(); ++k) {
    power = MultiPoly::multiply(power, r, n);
    if (power.is_zero()) break;
    sum += power;
  }
  const bool exact = a.exact() && r.is_zero();
  return Jet(a.context(), sum * inv0, n, exact);
}

inline Jet jet_derivative(const Jet& a, std::size_t var) {
  if (a.precision() <= 1) return Jet(a.context(), MultiPoly(a.arity()), 1, a.exact());
  return Jet(a.context(), a.body().derivative(var), a.precision() - 1, a.exact());
}

/// Sets every flagged variable to zero.
inline Jet jet_restrict_to_zero(const Jet& a, const std::vector<bool>& zeroed) {
  return Jet(a.context(), a.body().restrict_to_zero(zeroed), a.precision(), a.exact());
}

/// Substitution by a full arity x arity matrix (x_k -> sum_l m[k][l] x_l).
/// Linear substitutions preserve total degree, so precision and exactness carry over.
inline Jet jet_substitute_matrix(const Jet& a, const ScalarMatrix& matrix) {
  return Jet(a.context(), a.body().substitute_linear(matrix), a.precision(), a.exact());
}

inline std::complex<double> jet_evaluate(const Jet& a, std::span<const std::complex<double>> point) {
  return a.body().evaluate(point);
}

}  // namespace disctower
