#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/jet.hpp"

namespace disctower {

struct BranchSolution {
  std::vector<Jet> branches;
  int precision = 0;
};

namespace detail {

// Coefficients of F as a polynomial in x_var, lowest power first.
inline std::vector<MultiPoly> powers_of(const MultiPoly& f, std::size_t var) {
  const int p = f.degree_in(var);
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(p, 0)) + 1, MultiPoly(f.arity()));
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    rest.set(var, 0);
    out[static_cast<std::size_t>(m[var])].add_term(rest, c);
  }
  return out;
}

// sum_k c_k g^k, dropping degrees >= cap (cap < 0 keeps everything).
inline MultiPoly evaluate_powers(const std::vector<MultiPoly>& coeffs, const MultiPoly& g, int cap) {
  MultiPoly acc = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = MultiPoly::multiply(acc, g, cap) + coeffs[k];
  return cap < 0 ? acc : acc.truncated(cap);
}

inline std::vector<MultiPoly> derivative_powers(const std::vector<MultiPoly>& coeffs) {
  std::vector<MultiPoly> out;
  for (std::size_t k = 1; k < coeffs.size(); ++k) out.push_back(coeffs[k] * Scalar(static_cast<long>(k)));
  if (out.empty()) out.push_back(MultiPoly(coeffs.front().arity()));
  return out;
}

}  // namespace detail

/// Lifts a seed root x_var = G0 of F to a series root modulo (x)^target.
///
/// With D = F'(G0) of order e, each degree d of the correction solves
/// [F(G)]_(d+e) + D_e H_d = 0. This needs ord F(G0) > 2e and D_e dividing
/// every such form; e = 0 is ordinary Newton lifting.
inline Jet hensel_lift(const Jet& f, std::size_t var, const Jet& seed, int target) {
  check_same_context(f, seed);
  if (target < 1) throw Error(ErrorKind::InvalidArgument, "lift precision must be positive");
  if (seed.body().involves(var)) throw Error(ErrorKind::InvalidArgument, "seed involves the solved variable");
  const ContextPtr& ctx = f.context();
  const auto coeffs = detail::powers_of(f.body(), var);
  const auto dcoeffs = detail::derivative_powers(coeffs);
  if (!f.exact() && sgn(seed.constant_term()) != 0) {
    throw Error(ErrorKind::InvalidArgument, "a seed off the origin needs an exactly known F");
  }

  MultiPoly g = seed.body();
  const int probe = target + f.precision() + 1;
  const MultiPoly deriv = detail::evaluate_powers(dcoeffs, g, probe);
  const std::optional<int> e = deriv.order();
  if (!e || (!f.exact() && *e >= f.precision())) {
    throw Error(ErrorKind::DerivativeNotUnit, "derivative vanishes along the seed");
  }
  const MultiPoly lead = deriv.homogeneous_part(*e);

  const int work = target + *e;
  if (!f.exact() && work > f.precision()) {
    throw Error(ErrorKind::InconclusivePrecision, "F is known below degree " + std::to_string(f.precision()) +
                                                      " but lifting to " + std::to_string(target) + " needs " +
                                                      std::to_string(work) + "; raise the precision");
  }
  MultiPoly value = detail::evaluate_powers(coeffs, g, work);
  const std::optional<int> start = value.order();
  if (start && *start <= 2 * *e) {
    throw Error(ErrorKind::SeedNotApproximate, "F vanishes to order " + std::to_string(*start) +
                                                   " along the seed; need more than " + std::to_string(2 * *e));
  }
  g = g.truncated(target);
  for (int d = start ? *start - *e : target; d < target; ++d) {
    const MultiPoly r = value.homogeneous_part(d + *e);
    if (r.is_zero()) continue;
    const std::optional<MultiPoly> h = r.divide_exact(lead);
    if (!h) {
      throw Error(ErrorKind::DerivativeNotUnit,
                  "leading form of the derivative does not divide the degree " + std::to_string(d + *e) + " error");
    }
    g -= *h;
    value = detail::evaluate_powers(coeffs, g, work);
  }
  const bool exact = f.exact() && seed.exact() && detail::evaluate_powers(coeffs, g, -1).is_zero();
  return Jet(ctx, g, target, exact);
}

inline BranchSolution hensel_lift_branches(const Jet& f, std::size_t var, const std::vector<Jet>& seeds, int target) {
  BranchSolution out;
  out.precision = target;
  for (const Jet& s : seeds) out.branches.push_back(hensel_lift(f, var, s, target));
  return out;
}

}  // namespace disctower
