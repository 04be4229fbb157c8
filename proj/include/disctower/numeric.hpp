#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/uni_over_jets.hpp"

namespace disctower {

using ComplexApprox = std::complex<double>;

struct RootFinderConfig {
  double leading_tolerance = 1e-300;
  int max_iterations = 2000;
  bool polish_multiple = true;
};

struct ClusterConfig {
  double rel_tol = 1e-8;
  double abs_floor = 1e-10;
};

struct Clusters {
  std::vector<ComplexApprox> representatives;
  std::vector<std::size_t> sizes;
  std::size_t count() const { return representatives.size(); }
};

struct SampleRegion {
  std::vector<double> delta;    // one radius per parameter
  std::vector<double> epsilon;  // one radius per variable; empty disables escape checks
  int resolution = 5;
};

struct ProfileSample {
  std::vector<double> point;
  std::size_t count = 0;
  double max_modulus = 0;
  bool escaped = false;
};

struct RootProfile {
  std::vector<ProfileSample> samples;
  double rel_tol = 0;
  double abs_floor = 0;
  bool constant() const {
    return std::all_of(samples.begin(), samples.end(),
                       [&](const ProfileSample& s) { return s.count == samples.front().count; });
  }
  bool any_escape() const {
    return std::any_of(samples.begin(), samples.end(), [](const ProfileSample& s) { return s.escaped; });
  }
};

namespace detail {

// Coefficients are leading first; returns f(z) and the running bound
// sum |a_k| |z|^k used for backward-error stopping.
inline ComplexApprox horner(const std::vector<ComplexApprox>& a, ComplexApprox z, double* magnitude = nullptr) {
  ComplexApprox acc = a.front();
  double mag = std::abs(a.front());
  const double r = std::abs(z);
  for (std::size_t k = 1; k < a.size(); ++k) {
    acc = acc * z + a[k];
    mag = mag * r + std::abs(a[k]);
  }
  if (magnitude) *magnitude = mag;
  return acc;
}

inline std::vector<ComplexApprox> derivative(const std::vector<ComplexApprox>& a) {
  std::vector<ComplexApprox> d;
  const std::size_t p = a.size() - 1;
  for (std::size_t k = 0; k < p; ++k) d.push_back(a[k] * static_cast<double>(p - k));
  return d;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Newton on f^(m-1), a simple root when x is an m-fold root of f.
inline std::optional<ComplexApprox> multiple_root_near(const std::vector<std::vector<ComplexApprox>>& ders,
                                                       const std::vector<ComplexApprox>& members) {
  const std::size_t m = members.size();
  ComplexApprox start = 0;
  for (const auto& z : members) start += z;
  start /= static_cast<double>(m);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const auto& target = ders[m - 1];
  const auto& next = ders[m];
  ComplexApprox x = start;
  for (int it = 0; it < 100; ++it) {
    double mag = 0;
    const ComplexApprox fx = horner(target, x, &mag);
    if (std::abs(fx) <= 4 * eps * mag) break;
    const ComplexApprox dx = horner(next, x);
    if (std::abs(dx) == 0) break;
    const ComplexApprox step = fx / dx;
    x -= step;
    if (std::abs(step) <= eps * std::max(1.0, std::abs(x))) break;
  }
  // f, f', ..., f^(m-1) must vanish at x up to rounding of the coefficients.
  const double slack = 1e3 * eps * static_cast<double>(ders.front().size());
  for (std::size_t k = 0; k < m; ++k) {
    double mag = 0;
    const ComplexApprox v = horner(ders[k], x, &mag);
    if (std::abs(v) > slack * mag) return std::nullopt;
  }
  // Rounding splits a j-fold root into a ring of radius about
  // (j! slack |f|_x / |f^(j)(x)|)^(1/j), j the true multiplicity at x; every
  // member must sit inside it.
  double mag = 0;
  horner(ders.front(), x, &mag);
  double radius = -1;
  for (std::size_t j = m; j < ders.size(); ++j) {
    double mag_j = 0;
    const double top = std::abs(horner(ders[j], x, &mag_j));
    if (top <= slack * mag_j) continue;
    const double jf = std::tgamma(static_cast<double>(j) + 1);
    radius = 4 * std::pow(jf * slack * mag / top, 1.0 / static_cast<double>(j));
    break;
  }
  if (radius < 0) return std::nullopt;
  for (const auto& z : members) {
    if (std::abs(z - x) > radius) return std::nullopt;
  }
  return x;
}

// Agglomerates nearby roots, closest pair first, whenever the merged group
// passes as one multiple root, and moves every member onto it.
inline void polish_multiple(const std::vector<ComplexApprox>& a, std::vector<ComplexApprox>& z) {
  const std::size_t n = z.size();
  std::vector<std::vector<ComplexApprox>> ders{a};
  while (ders.back().size() > 1) ders.push_back(derivative(ders.back()));
  struct Group {
    std::vector<std::size_t> members;
    ComplexApprox point;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < n; ++i) groups.push_back({{i}, z[i]});
  std::set<std::pair<std::size_t, std::size_t>> rejected;  // keyed by first members
  while (true) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ga = 0, gb = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        if (rejected.count({groups[i].members.front(), groups[j].members.front()})) continue;
        const double d = std::abs(groups[i].point - groups[j].point);
        if (d < best) best = d, ga = i, gb = j;
      }
    }
    if (!std::isfinite(best)) break;
    std::vector<ComplexApprox> members;
    for (std::size_t g : {ga, gb}) {
      for (std::size_t k : groups[g].members) members.push_back(z[k]);
    }
    const auto x = multiple_root_near(ders, members);
    if (!x) {
      rejected.insert({groups[ga].members.front(), groups[gb].members.front()});
      continue;
    }
    const std::size_t fa = groups[ga].members.front(), fb = groups[gb].members.front();
    std::erase_if(rejected, [&](const auto& r) { return r.first == fa || r.second == fa || r.first == fb || r.second == fb; });
    Group merged{groups[ga].members, *x};
    merged.members.insert(merged.members.end(), groups[gb].members.begin(), groups[gb].members.end());
    std::sort(merged.members.begin(), merged.members.end());
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(gb));
    groups[ga] = std::move(merged);
  }
  for (const Group& g : groups) {
    if (g.members.size() < 2) continue;
    for (std::size_t k : g.members) z[k] = g.point;
  }
}

}  // namespace detail

/// All complex roots of a_0 T^p + ... + a_p by Aberth-Ehrlich iteration.
inline std::vector<ComplexApprox> univariate_roots(std::vector<ComplexApprox> a, const RootFinderConfig& cfg = {}) {
  for (const auto& c : a) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::InvalidArgument, "coefficient is not finite");
    }
  }
  if (a.empty() || std::abs(a.front()) <= cfg.leading_tolerance) {
    throw Error(ErrorKind::LeadingCoefficientZero, "leading coefficient vanishes");
  }
  std::vector<ComplexApprox> roots;
  while (a.size() > 1 && a.back() == ComplexApprox(0)) {
    roots.emplace_back(0);
    a.pop_back();
  }
  const std::size_t p = a.size() - 1;
  if (p == 0) return roots;
  if (p == 1) {
    roots.push_back(-a[1] / a[0]);
    return roots;
  }

  // Start on a circle of radius max |a_k / a_0|^(1/k) with a fixed twist.
  double radius = 0;
  for (std::size_t k = 1; k <= p; ++k) {
    radius = std::max(radius, std::pow(std::abs(a[k] / a[0]), 1.0 / static_cast<double>(k)));
  }
  if (radius == 0) radius = 1;
  std::vector<ComplexApprox> z(p);
  for (std::size_t k = 0; k < p; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p) + 0.4;
    z[k] = std::polar(radius, angle);
  }
  const auto da = detail::derivative(a);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(p, false);
  int iterations = 0;
  for (; iterations < cfg.max_iterations; ++iterations) {
    bool all_done = true;
    for (std::size_t i = 0; i < p; ++i) {
      if (done[i]) continue;
      double mag = 0;
      const ComplexApprox fz = detail::horner(a, z[i], &mag);
      if (std::abs(fz) <= 4 * eps * mag) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const ComplexApprox ratio = fz / detail::horner(da, z[i]);
      ComplexApprox sum = 0;
      for (std::size_t j = 0; j < p; ++j) {
        if (j != i && z[i] != z[j]) sum += 1.0 / (z[i] - z[j]);
      }
      const ComplexApprox step = ratio / (1.0 - ratio * sum);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
      if (std::abs(step) <= eps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) break;
  }
  if (iterations == cfg.max_iterations) {
    std::string residuals;
    for (const auto& r : z) residuals += " " + std::to_string(std::abs(detail::horner(a, r)));
    throw Error(ErrorKind::NoConvergence,
                "no convergence after " + std::to_string(cfg.max_iterations) + " iterations; residuals:" + residuals);
  }
  if (cfg.polish_multiple) detail::polish_multiple(a, z);
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

/// Single-linkage clusters. Two roots join when they are closer than
/// rel_tol times the largest root modulus, or than abs_floor.
inline Clusters cluster_roots(const std::vector<ComplexApprox>& roots, const ClusterConfig& cfg = {}) {
  if (!(cfg.rel_tol > 0)) throw Error(ErrorKind::InvalidArgument, "relative tolerance must be positive");
  Clusters out;
  const std::size_t n = roots.size();
  if (n == 0) return out;
  double scale = 0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));
  const double tol = std::max(cfg.rel_tol * scale, cfg.abs_floor);
  detail::UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(roots[i] - roots[j]) <= tol) uf.unite(i, j);
    }
  }
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    if (slot[r] == n) {
      slot[r] = out.representatives.size();
      out.representatives.push_back(roots[i]);
      out.sizes.push_back(0);
    }
    ++out.sizes[slot[r]];
  }
  return out;
}

/// Rounds exact coefficients to doubles after evaluating them at a point of
/// the parameter space (later variables set to zero).
inline std::vector<ComplexApprox> specialize(const UniOverJets& f, const std::vector<double>& params) {
  std::vector<ComplexApprox> point(f.context()->arity(), 0.0);
  for (std::size_t k = 0; k < params.size() && k < point.size(); ++k) point[k] = params[k];
  std::vector<ComplexApprox> out;
  for (const Jet& c : f.coeffs()) out.push_back(jet_evaluate(c, point));
  return out;
}

/// Root counts of f over a grid in the parameters x_1..x_var (the variables
/// before f's distinguished one). Each axis takes `resolution` evenly spaced
/// points in [-delta_k, delta_k].
inline RootProfile root_count_profile(const UniOverJets& f, const SampleRegion& region, const ClusterConfig& cfg = {},
                                      const RootFinderConfig& roots_cfg = {}) {
  const std::size_t params = f.var();
  if (region.delta.size() != params) {
    throw Error(ErrorKind::InvalidArgument, "need one parameter radius per variable before the distinguished one");
  }
  for (double d : region.delta) {
    if (!(d > 0)) throw Error(ErrorKind::InvalidArgument, "parameter radii must be positive");
  }
  for (double e : region.epsilon) {
    if (!(e > 0)) throw Error(ErrorKind::InvalidArgument, "variable radii must be positive");
  }
  if (region.resolution < 1) throw Error(ErrorKind::InvalidArgument, "grid resolution must be positive");
  const double escape = region.epsilon.size() > f.var() ? region.epsilon[f.var()] : 0;

  RootProfile out;
  out.rel_tol = cfg.rel_tol;
  out.abs_floor = cfg.abs_floor;
  const int res = region.resolution;
  std::vector<int> idx(params, 0);
  auto coord = [&](std::size_t k) {
    if (res == 1) return 0.0;
    return -region.delta[k] + 2 * region.delta[k] * idx[k] / (res - 1);
  };
  while (true) {
    ProfileSample s;
    for (std::size_t k = 0; k < params; ++k) s.point.push_back(coord(k));
    const auto roots = univariate_roots(specialize(f, s.point), roots_cfg);
    s.count = cluster_roots(roots, cfg).count();
    for (const auto& r : roots) s.max_modulus = std::max(s.max_modulus, std::abs(r));
    s.escaped = escape > 0 && s.max_modulus >= escape;
    out.samples.push_back(std::move(s));
    std::size_t k = 0;
    while (k < params && ++idx[k] == res) idx[k++] = 0;
    if (k == params) break;
  }
  return out;
}

}  // namespace disctower
