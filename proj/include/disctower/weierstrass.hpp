#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/jet.hpp"
#include "disctower/linear_change.hpp"
#include "disctower/uni_over_jets.hpp"

namespace disctower {

struct GenericityConfig {
  int height_bound = 3;
  std::optional<std::uint64_t> seed;  // enables the random fallback
  int random_attempts = 2000;
};

struct ChangeResult {
  LinearChange change;
  Jet transformed;
  int order = 0;
};

struct PreparationResult {
  Jet unit;
  UniOverJets weierstrass;
  int precision = 0;
};

struct X1Extraction {
  int q = 0;
  Jet g;
  bool certified = true;  // false when divisibility was read off a truncation
};

namespace detail {

inline void require_in_prefix(const Jet& f, std::size_t i, const char* what) {
  for (const auto& [m, c] : f.body().terms()) {
    if (m.involves_from(i + 1)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " involves variables after the distinguished one");
  }
}

inline std::vector<bool> zero_mask(std::size_t arity, std::size_t keep_from, std::size_t keep_to) {
  std::vector<bool> zeroed(arity, true);
  for (std::size_t k = keep_from; k <= keep_to; ++k) zeroed[k] = false;
  return zeroed;
}

}  // namespace detail

/// Order of F(0, ..., 0, x_i).
inline int regularity_order(const Jet& f, std::size_t i) {
  detail::require_in_prefix(f, i, "jet");
  if (f.is_zero()) throw Error(ErrorKind::AmbiguousZero, "jet is zero at precision " + std::to_string(f.precision()));
  std::optional<int> best;
  for (const auto& [m, c] : f.body().terms()) {
    if (m.degree() == m[i]) {
      best = m[i];
      break;  // graded order: the first pure power is the lowest
    }
  }
  if (!best) throw Error(ErrorKind::NotRegular, "restriction to the x_" + std::to_string(i + 1) + " axis vanishes");
  return *best;
}

/// Searches shears x_k -> x_k + c_k x_i (k in block, k != i) by increasing
/// height until F restricted to the x_i axis reaches the order of F restricted
/// to the block.
inline ChangeResult generic_linear_change(const Jet& f, std::size_t i, std::size_t block_start,
                                          const GenericityConfig& config = {}) {
  if (block_start > i) throw Error(ErrorKind::InvalidArgument, "block must contain the distinguished variable");
  detail::require_in_prefix(f, i, "jet");
  const std::size_t arity = f.arity();
  const std::vector<bool> outside = detail::zero_mask(arity, block_start, i);
  const MultiPoly restricted = f.body().restrict_to_zero(outside);
  const std::optional<int> target = restricted.order();
  if (!target) throw Error(ErrorKind::AmbiguousZero, "jet restricted to the block is zero at precision " + std::to_string(f.precision()));
  const MultiPoly lead = restricted.homogeneous_part(*target);
  const std::size_t size = i - block_start + 1;
  std::vector<std::size_t> free_slots;
  for (std::size_t k = block_start; k < i; ++k) free_slots.push_back(k);

  // The shear works iff the leading form is nonzero at (c, 1).
  auto works = [&](const std::vector<Scalar>& c) {
    Scalar sum = 0;
    for (const auto& [m, v] : lead.terms()) {
      Scalar t = v;
      for (std::size_t s = 0; s < free_slots.size(); ++s) {
        for (int e = 0; e < m[free_slots[s]]; ++e) t *= c[s];
      }
      sum += t;
    }
    return sgn(sum) != 0;
  };
  auto finish = [&](const std::vector<Scalar>& c) {
    ScalarMatrix m(size, std::vector<Scalar>(size, Scalar(0)));
    for (std::size_t k = 0; k < size; ++k) m[k][k] = 1;
    for (std::size_t s = 0; s < free_slots.size(); ++s) m[s][size - 1] = c[s];
    LinearChange change(block_start, std::move(m));
    return ChangeResult{change, jet_substitute_linear(f, change), *target};
  };

  // Values ordered 0, 1, -1, 2, -2, ...; vectors of height h are those whose
  // largest entry in this order has index 2h - 1 or 2h.
  const int bound = std::max(0, config.height_bound);
  std::vector<int> values{0};
  for (int h = 1; h <= bound; ++h) {
    values.push_back(h);
    values.push_back(-h);
  }
  const std::size_t slots = free_slots.size();
  for (int h = 0; h <= bound; ++h) {
    const std::size_t limit = static_cast<std::size_t>(h == 0 ? 1 : 2 * h + 1);
    std::vector<std::size_t> idx(slots, 0);
    while (true) {
      bool at_height = (h == 0);
      std::vector<Scalar> c(slots);
      for (std::size_t s = 0; s < slots; ++s) {
        c[s] = values[idx[s]];
        if (h > 0 && idx[s] + 1 >= limit - 1) at_height = true;
      }
      if (at_height && works(c)) return finish(c);
      std::size_t s = slots;
      while (s > 0) {
        --s;
        if (++idx[s] < limit) break;
        idx[s] = 0;
        if (s == 0) {
          s = slots + 1;
          break;
        }
      }
      if (slots == 0 || s == slots + 1) break;
    }
  }
  if (config.seed) {
    std::mt19937_64 rng(*config.seed);
    std::uniform_int_distribution<int> dist(-10 * std::max(1, bound), 10 * std::max(1, bound));
    for (int attempt = 0; attempt < config.random_attempts; ++attempt) {
      std::vector<Scalar> c(slots);
      for (auto& v : c) v = dist(rng);
      if (works(c)) return finish(c);
    }
  }
  throw Error(ErrorKind::SearchExhausted,
              "no shear of height <= " + std::to_string(bound) + " makes the jet regular in x_" + std::to_string(i + 1));
}

namespace detail {

// Replaces x_i^p by -tail repeatedly, where w0 = x_i^p + tail and tail has
// x_i-degree < p. Returns (quotient, remainder) with deg_{x_i} remainder < p.
inline std::pair<MultiPoly, MultiPoly> divide_by_monic(const MultiPoly& r, const MultiPoly& tail, std::size_t i, int p,
                                                       std::size_t xprime_cap) {
  const std::size_t arity = r.arity();
  const int top = r.degree_in(i);
  MultiPoly quotient(arity);
  if (top < p) return {quotient, r};
  std::vector<MultiPoly> by_degree(static_cast<std::size_t>(top) + 1, MultiPoly(arity));
  for (const auto& [m, c] : r.terms()) by_degree[static_cast<std::size_t>(m[i])].add_term(m, c);
  for (int d = top; d >= p; --d) {
    for (const auto& [m, c] : by_degree[static_cast<std::size_t>(d)].terms()) {
      Monomial qm = m;
      qm.set(i, d - p);
      quotient.add_term(qm, c);
      for (const auto& [tm, tc] : tail.terms()) {
        Monomial nm = qm * tm;
        if (static_cast<std::size_t>(nm.degree_below(i)) >= xprime_cap) continue;
        by_degree[static_cast<std::size_t>(nm[i])].add_term(nm, -(c * tc));
      }
    }
  }
  MultiPoly remainder(arity);
  for (int d = 0; d < p; ++d) remainder += by_degree[static_cast<std::size_t>(d)];
  return {quotient, remainder};
}

inline MultiPoly drop_xprime_degree(const MultiPoly& a, std::size_t i, std::size_t cap) {
  MultiPoly r(a.arity());
  for (const auto& [m, c] : a.terms()) {
    if (static_cast<std::size_t>(m.degree_below(i)) < cap) r.add_term(m, c);
  }
  return r;
}

}  // namespace detail

/// Weierstrass preparation F = u * W with W monic of degree p in x_i.
///
/// Works in a weighted grading in which F starts with c x_i^p plus x'-terms;
/// each weight layer of u and W then follows from one division by that
/// leading layer.
inline PreparationResult weierstrass_prepare(const Jet& f, std::size_t i) {
  const int p = regularity_order(f, i);
  const ContextPtr& ctx = f.context();
  const std::size_t arity = f.arity();
  const int n = f.precision();
  if (p == 0) return {f, UniOverJets::one(i, ctx, n), n};

  const Scalar lead = f.body().coefficient(Monomial::variable(i, p));

  // Weight x'^a x_i^b as A|a| + B b with A/B the steepest slope (p - b)/|a|
  // over the known terms below x_i^p, so every term weighs at least Bp.
  Scalar slope = 0;
  for (const auto& [m, c] : f.body().terms()) {
    if (m[i] >= p) continue;
    Scalar s(p - m[i], m.degree_below(i));
    s.canonicalize();
    slope = std::max(slope, s);
  }
  // Shallower slopes only cost unit precision, so total degree is the floor.
  slope = i == 0 ? Scalar(1) : std::max(slope, Scalar(1));
  const long a_w = slope.get_num().get_si();
  const long b_w = slope.get_den().get_si();
  const long big = std::max(a_w, b_w);
  auto weight = [&](const Monomial& m) { return a_w * m.degree_below(i) + b_w * m[i]; };
  std::map<long, MultiPoly> layers;
  for (const auto& [m, c] : f.body().terms()) {
    auto it = layers.try_emplace(weight(m), MultiPoly(arity)).first;
    it->second.add_term(m, c);
  }
  auto layer = [&](long w) {
    auto it = layers.find(w);
    return it == layers.end() ? MultiPoly(arity) : it->second;
  };

  // Inexact input: every missing term has degree >= N and so weight >=
  // min(A, B) N, which bounds the layers we may use. Exact input: go far
  // enough to pin down all coefficients below degree N.
  const long base = b_w * p;
  const long bound = f.exact() ? std::max(a_w * (n - 1) + b_w * (p - 1), big * (n - 1) + base) + 1
                               : std::min(a_w, b_w) * n;
  const std::size_t xprime_cap = static_cast<std::size_t>(n);

  MultiPoly w0 = layer(base) * (1 / lead);
  MultiPoly tail = w0 - MultiPoly::monomial(arity, Monomial::variable(i, p));
  std::vector<MultiPoly> u_parts{MultiPoly::constant(arity, lead)};
  std::vector<MultiPoly> w_parts{w0};
  const long top_weight = layers.rbegin()->first;
  auto product_matches = [&] {
    MultiPoly u_sum(arity), w_sum(arity);
    for (const auto& part : u_parts) u_sum += part;
    for (const auto& part : w_parts) w_sum += part;
    return MultiPoly::multiply(u_sum, w_sum, -1) == f.body();
  };
  for (long k = 1; base + k < bound; ++k) {
    // Once u W reproduces an exact F, every later layer is zero.
    if (f.exact() && base + k > top_weight && k % base == 0 && product_matches()) break;
    MultiPoly r = layer(base + k);
    for (long l = 1; l < k; ++l) {
      const MultiPoly& ul = u_parts[static_cast<std::size_t>(l)];
      const MultiPoly& wl = w_parts[static_cast<std::size_t>(k - l)];
      if (!ul.is_zero() && !wl.is_zero()) r -= MultiPoly::multiply(ul, wl, -1);
    }
    r = detail::drop_xprime_degree(r, i, xprime_cap);
    auto [quo, rem] = detail::divide_by_monic(r, tail, i, p, xprime_cap);
    u_parts.push_back(std::move(quo));
    w_parts.push_back(rem * (1 / lead));
  }

  MultiPoly u_body(arity), w_body(arity);
  for (auto& part : u_parts) u_body += part;
  for (auto& part : w_parts) w_body += part;

  long precision = 0;
  bool exact = false;
  if (f.exact()) {
    precision = n;
    exact = MultiPoly::multiply(u_body.truncated(n), w_body, -1) == f.body();
  } else if (i == 0) {
    precision = n - p;
  } else {
    // Coefficient a_j x'^a x_i^(p-j) is known when its weight is below the
    // bound for every |a| < N_a; likewise for the unit's monomials.
    const long coeff_precision = (bound - b_w * (p - 1) - 1) / a_w + 1;
    const long unit_precision = bound - base - 1 < 0 ? 0 : (bound - base - 1) / big + 1;
    precision = std::min<long>({coeff_precision, unit_precision, n});
  }
  if (precision < 1) {
    throw Error(ErrorKind::InconclusivePrecision,
                "precision " + std::to_string(n) + " is too low to prepare a jet of order " + std::to_string(p));
  }

  std::vector<MultiPoly> coeffs(static_cast<std::size_t>(p) + 1, MultiPoly(arity));
  for (const auto& [m, c] : w_body.terms()) {
    Monomial rest = m;
    rest.set(i, 0);
    coeffs[static_cast<std::size_t>(p - m[i])].add_term(rest, c);
  }
  std::vector<Jet> jets;
  const int out = static_cast<int>(precision);
  for (auto& c : coeffs) jets.emplace_back(ctx, std::move(c), out, exact || i == 0);
  jets.front() = Jet::constant(ctx, Scalar(1), out);
  return {Jet(ctx, std::move(u_body), out, exact), UniOverJets(i, std::move(jets)), out};
}

/// Splits off the largest power of x_1 dividing every stored monomial.
inline X1Extraction extract_x1_power(const Jet& f) {
  if (f.is_zero()) throw Error(ErrorKind::AmbiguousZero, "jet is zero at precision " + std::to_string(f.precision()));
  int q = -1;
  for (const auto& [m, c] : f.body().terms()) q = (q < 0) ? m[0] : std::min(q, m[0]);
  if (q == 0) return {0, f, true};
  MultiPoly g = f.body().divide_by_variable_power(0, q);
  // Exact inputs lose nothing by the division.
  const int precision = f.exact() ? f.precision() : f.precision() - q;
  return {q, Jet(f.context(), std::move(g), precision, f.exact()), f.exact()};
}

}  // namespace disctower
