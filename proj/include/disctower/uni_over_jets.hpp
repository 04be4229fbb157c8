#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/jet.hpp"
#include "disctower/linear_change.hpp"

namespace disctower {

/// c_0 T^p + c_1 T^(p-1) + ... + c_p with T = x_var and jet coefficients in
/// the variables before `var`. All coefficients share one precision.
class UniOverJets {
 public:
  UniOverJets() = default;
  UniOverJets(std::size_t var, std::vector<Jet> coeffs) : var_(var), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial needs a leading coefficient");
    const ContextPtr& ctx = coeffs_.front().context();
    if (var_ >= ctx->arity()) throw Error(ErrorKind::IndexOutOfRange, "distinguished variable out of range");
    int n = coeffs_.front().precision();
    for (const Jet& c : coeffs_) {
      if (!same_context(c.context(), ctx)) throw Error(ErrorKind::ContextMismatch, "coefficients over different contexts");
      if (c.body().terms().size() && involves_from(c, var_)) {
        throw Error(ErrorKind::InvalidArgument, "coefficient involves the distinguished variable or a later one");
      }
      n = std::min(n, c.precision());
    }
    for (Jet& c : coeffs_) c = jet_truncate(c, n);
  }

  /// Monic T^p + sum a_j T^(p-j) from the non-leading coefficients a_1..a_p.
  static UniOverJets monic(std::size_t var, const std::vector<Jet>& tail, const ContextPtr& ctx, int precision) {
    std::vector<Jet> coeffs;
    coeffs.push_back(Jet::constant(ctx, Scalar(1), precision));
    coeffs.insert(coeffs.end(), tail.begin(), tail.end());
    return UniOverJets(var, std::move(coeffs));
  }

  /// The constant polynomial 1 (the "f == 1" level of a tower).
  static UniOverJets one(std::size_t var, const ContextPtr& ctx, int precision) {
    return UniOverJets(var, {Jet::constant(ctx, Scalar(1), precision)});
  }

  /// Splits a jet into powers of x_var. The coefficient of x_var^k is known
  /// modulo (x)^(N-k), so the common precision is N - degree.
  static UniOverJets from_jet(const Jet& f, std::size_t var) {
    const int p = f.body().degree_in(var);
    if (p < 0) return UniOverJets(var, {f});
    if (f.body().terms().size() && involves_from_strict(f, var)) {
      throw Error(ErrorKind::InvalidArgument, "jet involves variables after the distinguished one");
    }
    const std::size_t n = f.arity();
    std::vector<MultiPoly> parts(static_cast<std::size_t>(p) + 1, MultiPoly(n));
    for (const auto& [m, c] : f.body().terms()) {
      Monomial rest = m;
      rest.set(var, 0);
      parts[static_cast<std::size_t>(p - m[var])].add_term(rest, c);
    }
    if (!f.exact() && f.precision() - p < 1) {
      throw Error(ErrorKind::InconclusivePrecision, "precision too low to split off the leading coefficient");
    }
    const int precision = f.exact() ? f.precision() : f.precision() - p;
    std::vector<Jet> coeffs;
    for (auto& part : parts) coeffs.emplace_back(f.context(), std::move(part), precision, f.exact());
    return UniOverJets(var, std::move(coeffs));
  }

  std::size_t var() const noexcept { return var_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Jet>& coeffs() const noexcept { return coeffs_; }
  const Jet& coeff(std::size_t j) const { return coeffs_.at(j); }
  const Jet& leading() const { return coeffs_.front(); }
  const ContextPtr& context() const { return coeffs_.front().context(); }
  int precision() const { return coeffs_.front().precision(); }
  bool exact() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Jet& c) { return c.exact(); });
  }

  bool is_monic() const {
    const MultiPoly& b = leading().body();
    return b.size() == 1 && b.constant_term() == 1;
  }

  /// Non-leading coefficients a_1..a_p.
  std::vector<Jet> tail() const { return {coeffs_.begin() + 1, coeffs_.end()}; }

  /// Recombines into a single jet in x^var.
  Jet to_jet() const {
    const std::size_t n = context()->arity();
    MultiPoly body(n);
    const int p = degree();
    for (int j = 0; j <= p; ++j) {
      for (const auto& [m, c] : coeffs_[static_cast<std::size_t>(j)].body().terms()) {
        Monomial t = m;
        t.set(var_, p - j);
        body.add_term(t, c);
      }
    }
    return Jet(context(), std::move(body), precision(), exact());
  }

  UniOverJets map_coeffs(auto&& fn) const {
    std::vector<Jet> out;
    out.reserve(coeffs_.size());
    for (const Jet& c : coeffs_) out.push_back(fn(c));
    return UniOverJets(var_, std::move(out));
  }

  UniOverJets with_precision(int precision) const {
    return map_coeffs([&](const Jet& c) { return jet_with_precision(c, precision); });
  }

  friend bool operator==(const UniOverJets&, const UniOverJets&) = default;

 private:
  static bool involves_from(const Jet& c, std::size_t var) {
    for (const auto& [m, v] : c.body().terms()) {
      if (m.involves_from(var)) return true;
    }
    return false;
  }
  static bool involves_from_strict(const Jet& c, std::size_t var) { return involves_from(c, var + 1); }

  std::size_t var_ = 0;
  std::vector<Jet> coeffs_;
};

inline UniOverJets uni_substitute_linear(const UniOverJets& f, const LinearChange& change) {
  return f.map_coeffs([&](const Jet& c) { return jet_substitute_linear(c, change); });
}

inline UniOverJets uni_mul(const UniOverJets& a, const UniOverJets& b) {
  if (a.var() != b.var()) throw Error(ErrorKind::InvalidArgument, "distinguished variables differ");
  const std::size_t pa = a.coeffs().size();
  const std::size_t pb = b.coeffs().size();
  const int n = std::min(a.precision(), b.precision());
  std::vector<Jet> out(pa + pb - 1, Jet::zero(a.context(), n));
  for (std::size_t i = 0; i < pa; ++i) {
    for (std::size_t j = 0; j < pb; ++j) out[i + j] = out[i + j] + a.coeff(i) * b.coeff(j);
  }
  return UniOverJets(a.var(), std::move(out));
}

/// f(value) by Horner's rule.
inline Jet uni_evaluate(const UniOverJets& f, const Jet& value) {
  Jet acc = f.leading();
  for (std::size_t j = 1; j < f.coeffs().size(); ++j) acc = acc * value + f.coeff(j);
  return acc;
}

inline UniOverJets uni_derivative(const UniOverJets& f) {
  const int p = f.degree();
  if (p == 0) return UniOverJets(f.var(), {Jet::zero(f.context(), f.precision())});
  std::vector<Jet> out;
  for (int j = 0; j < p; ++j) out.push_back(f.coeff(static_cast<std::size_t>(j)) * Scalar(p - j));
  return UniOverJets(f.var(), std::move(out));
}

/// f(T + c) for a scalar shift.
inline UniOverJets uni_shift(const UniOverJets& f, const Scalar& c) {
  // Horner in polynomial arithmetic: acc = acc * (T + c) + coeff.
  const int n = f.precision();
  std::vector<Jet> acc{f.leading()};
  for (std::size_t j = 1; j < f.coeffs().size(); ++j) {
    std::vector<Jet> next(acc.size() + 1, Jet::zero(f.context(), n));
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k] = next[k] + acc[k];
      next[k + 1] = next[k + 1] + acc[k] * c;
    }
    next.back() = next.back() + f.coeff(j);
    acc = std::move(next);
  }
  return UniOverJets(f.var(), std::move(acc));
}

}  // namespace disctower
