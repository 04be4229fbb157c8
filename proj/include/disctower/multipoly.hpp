#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/monomial.hpp"
#include "disctower/scalar.hpp"

namespace disctower {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// Sparse polynomial with exact rational coefficients. No zero coefficient is
/// ever stored, so structural equality is mathematical equality.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t arity) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const Scalar& c) {
    MultiPoly p(arity);
    p.add_term(Monomial{}, c);
    return p;
  }
  static MultiPoly variable(std::size_t arity, std::size_t i) {
    if (i >= arity) throw Error(ErrorKind::IndexOutOfRange, "variable index out of range");
    MultiPoly p(arity);
    p.add_term(Monomial::variable(i), Scalar(1));
    return p;
  }
  static MultiPoly monomial(std::size_t arity, const Monomial& m, const Scalar& c = Scalar(1)) {
    MultiPoly p(arity);
    p.add_term(m, c);
    return p;
  }

  std::size_t arity() const noexcept { return arity_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Monomial& m, const Scalar& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar constant_term() const { return coefficient(Monomial{}); }

  /// Highest total degree; -1 for the zero polynomial.
  int total_degree() const noexcept { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  /// Lowest total degree of a nonzero term; nullopt for zero.
  std::optional<int> order() const noexcept {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();
  }

  int degree_in(std::size_t var) const noexcept {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }

  bool involves(std::size_t var) const noexcept {
    for (const auto& [m, c] : terms_) {
      if (m[var] != 0) return true;
    }
    return false;
  }

  /// Drops every term of total degree >= cap; `dropped` reports whether any was removed.
  MultiPoly truncated(int cap, bool* dropped = nullptr) const {
    MultiPoly r(arity_);
    bool any = false;
    for (const auto& [m, c] : terms_) {
      if (m.degree() < cap) {
        r.terms_.emplace_hint(r.terms_.end(), m, c);
      } else {
        any = true;
      }
    }
    if (dropped) *dropped = any;
    return r;
  }

  MultiPoly homogeneous_part(int degree) const {
    MultiPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      if (m.degree() == degree) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }

  /// Keeps only the terms free of every variable flagged in `zeroed`.
  MultiPoly restrict_to_zero(const std::vector<bool>& zeroed) const {
    MultiPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      bool keep = true;
      for (std::size_t i = 0; i < zeroed.size() && keep; ++i) keep = !(zeroed[i] && m[i] != 0);
      if (keep) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& b) {
    check_arity(b);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& b) {
    check_arity(b);
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b, -1); }

  friend MultiPoly operator*(MultiPoly a, const Scalar& s) {
    if (sgn(s) == 0) return MultiPoly(a.arity_);
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }
  friend MultiPoly operator*(const Scalar& s, MultiPoly a) { return std::move(a) * s; }

  /// Product keeping only terms of total degree < cap (cap < 0: keep all).
  static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b, int cap, bool* dropped = nullptr) {
    a.check_arity(b);
    MultiPoly r(a.arity_);
    bool any = false;
    for (const auto& [ma, ca] : a.terms_) {
      if (cap >= 0 && ma.degree() >= cap) {
        any = true;
        break;
      }
      for (const auto& [mb, cb] : b.terms_) {
        if (cap >= 0 && ma.degree() + mb.degree() >= cap) {
          any = true;
          break;
        }
        r.add_term(ma * mb, ca * cb);
      }
    }
    if (dropped) *dropped = any;
    return r;
  }

  MultiPoly pow(int k, int cap = -1) const {
    MultiPoly result = constant(arity_, Scalar(1));
    MultiPoly base = *this;
    while (k > 0) {
      if (k & 1) result = multiply(result, base, cap);
      k >>= 1;
      if (k > 0) base = multiply(base, base, cap);
    }
    return result;
  }

  MultiPoly derivative(std::size_t var) const {
    MultiPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d.set(var, m[var] - 1);
      r.add_term(d, c * m[var]);
    }
    return r;
  }

  /// Divides every term by x_var^k; requires each term to carry that power.
  MultiPoly divide_by_variable_power(std::size_t var, int k) const {
    MultiPoly r(arity_);
    const Monomial v = Monomial::variable(var, k);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m / v, c);
    return r;
  }

  /// Exact division; nullopt when `d` does not divide *this.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const {
    check_arity(d);
    if (d.is_zero()) throw Error(ErrorKind::NotDivisible, "division by zero polynomial");
    MultiPoly q(arity_);
    MultiPoly r = *this;
    const auto& [dm, dc] = *d.terms_.rbegin();
    while (!r.is_zero()) {
      const auto [rm, rc] = *r.terms_.rbegin();
      if (!dm.divides(rm)) return std::nullopt;
      const Monomial tm = rm / dm;
      const Scalar tc = rc / dc;
      q.add_term(tm, tc);
      for (const auto& [m, c] : d.terms_) r.add_term(m * tm, -(c * tc));
    }
    return q;
  }

  /// Image under x_k -> sum_l m[k][l] x_l for all k (full arity x arity matrix).
  MultiPoly substitute_linear(const ScalarMatrix& matrix) const {
    std::vector<MultiPoly> forms;
    forms.reserve(arity_);
    for (std::size_t k = 0; k < arity_; ++k) {
      MultiPoly f(arity_);
      for (std::size_t l = 0; l < arity_; ++l) f.add_term(Monomial::variable(l), matrix[k][l]);
      forms.push_back(std::move(f));
    }
    std::map<std::pair<std::size_t, int>, MultiPoly> powers;
    auto power = [&](std::size_t k, int e) -> const MultiPoly& {
      auto key = std::make_pair(k, e);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      return powers.emplace(key, forms[k].pow(e)).first->second;
    };
    MultiPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      MultiPoly t = constant(arity_, c);
      for (std::size_t k = 0; k < arity_; ++k) {
        if (m[k] > 0) t = t * power(k, m[k]);
      }
      r += t;
    }
    return r;
  }

  std::complex<double> evaluate(std::span<const std::complex<double>> point) const {
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = c.get_d();
      for (std::size_t k = 0; k < arity_; ++k) {
        for (int e = 0; e < m[k]; ++e) t *= point[k];
      }
      sum += t;
    }
    return sum;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  void check_arity(const MultiPoly& b) const {
    if (arity_ != b.arity_) throw Error(ErrorKind::ContextMismatch, "polynomial arity mismatch");
  }

  std::size_t arity_ = 0;
  TermMap terms_;
};

}  // namespace disctower
