#pragma once

#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "disctower/jet.hpp"

namespace disctower::testing {

struct TermSpec {
  std::vector<int> exps;
  Scalar coeff;
};

inline Monomial mono(const std::vector<int>& exps) {
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
  return m;
}

inline MultiPoly poly(std::size_t arity, std::initializer_list<TermSpec> terms) {
  MultiPoly p(arity);
  for (const auto& t : terms) p.add_term(mono(t.exps), t.coeff);
  return p;
}

inline Jet jet(const ContextPtr& ctx, std::initializer_list<TermSpec> terms, int precision, bool exact = true) {
  return Jet(ctx, poly(ctx->arity(), terms), precision, exact);
}

inline Scalar q(long num, long den = 1) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

/// Small rational with numerator in [-range, range] and denominator in [1, den].
inline Scalar random_scalar(std::mt19937_64& rng, int range = 5, int den = 3) {
  std::uniform_int_distribution<int> nd(-range, range);
  std::uniform_int_distribution<int> dd(1, den);
  Scalar s(nd(rng), dd(rng));
  s.canonicalize();
  return s;
}

/// Random polynomial with up to `terms` monomials of total degree < max_degree,
/// using only the first `vars` variables.
inline MultiPoly random_poly(std::mt19937_64& rng, std::size_t arity, std::size_t vars, int max_degree, int terms,
                             bool allow_constant = true) {
  MultiPoly p(arity);
  std::uniform_int_distribution<int> deg(allow_constant ? 0 : 1, std::max(0, max_degree - 1));
  std::uniform_int_distribution<std::size_t> var(0, vars == 0 ? 0 : vars - 1);
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    const int d = vars == 0 ? 0 : deg(rng);
    for (int e = 0; e < d; ++e) {
      const std::size_t v = var(rng);
      m.set(v, m[v] + 1);
    }
    p.add_term(m, random_scalar(rng));
  }
  return p;
}

}  // namespace disctower::testing
