#pragma once

#include <optional>
#include <string>
#include <vector>

#include "disctower/discriminants.hpp"
#include "disctower/error.hpp"
#include "disctower/weierstrass.hpp"

namespace disctower {

enum class TowerKind { Set, Function };

inline std::string_view to_string(TowerKind k) { return k == TowerKind::Set ? "set" : "function"; }

/// One floor of the tower. `level` is 1-based: f lives in x_level with
/// coefficients in x_1..x_(level-1). A degree-0 f is the constant 1.
struct TowerLevel {
  int level = 0;
  UniOverJets f;
  Jet unit;
  int q = 0;
  std::optional<int> disc_index;  // j_(level+1); absent on the top level
  LinearChange change;            // change applied when this level was built

  bool is_one() const { return f.degree() == 0; }
};

struct TowerBase {
  Scalar u0;
  int q0 = 0;
  int disc_index = 0;  // j_1, or the index that produced the terminal unit
};

struct NormalSystem {
  TowerKind kind = TowerKind::Set;
  ContextPtr context;
  int precision = 0;
  std::vector<TowerLevel> levels;  // from level n downwards
  TowerBase base;
  std::vector<Jet> inputs;
  std::vector<std::vector<Jet>> splitting;  // b_(m,k), k = 2..n (function towers)
  ScalarMatrix change;                      // composite change on all variables
  bool exact_input = false;
  std::vector<std::string> caveats;
  GenericityConfig config;
};

/// Assigns every monomial of g to x_k for its smallest variable index k >= 2.
/// Returns b_2..b_n (index 0 holds b_2).
inline std::vector<Jet> split_linear_parts(const Jet& g) {
  const std::size_t n = g.arity();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "function germs need at least two variables");
  if (sgn(g.constant_term()) != 0) throw Error(ErrorKind::NonzeroConstantTerm, "germ does not vanish at the origin");
  if (g.body().involves(0)) throw Error(ErrorKind::InvolvesX1, "germ involves x_1");
  std::vector<MultiPoly> parts(n - 1, MultiPoly(n));
  for (const auto& [m, c] : g.body().terms()) {
    std::size_t k = 1;
    while (m[k] == 0) ++k;
    Monomial rest = m;
    rest.set(k, m[k] - 1);
    parts[k - 1].add_term(rest, c);
  }
  // b_k is known one degree less precisely than g.
  const int precision = g.exact() ? g.precision() : std::max(1, g.precision() - 1);
  std::vector<Jet> out;
  for (auto& p : parts) out.emplace_back(g.context(), std::move(p), precision, g.exact());
  return out;
}

namespace detail {

inline void transport_levels(std::vector<TowerLevel>& levels, const LinearChange& change) {
  if (change.is_identity()) return;
  for (TowerLevel& lvl : levels) {
    lvl.f = uni_substitute_linear(lvl.f, change);
    lvl.unit = jet_substitute_linear(lvl.unit, change);
  }
}

inline void compose_change(NormalSystem& ns, const LinearChange& change) {
  if (change.is_identity()) return;
  ns.change = matrix_product(ns.change, change.embed(ns.context->arity()));
}

inline DiscriminantScan require_scan(const GDiscVector& d, int level) {
  DiscriminantScan scan = scan_discriminants(d);
  if (!scan.found) {
    throw Error(ErrorKind::InconclusivePrecision,
                "generalized discriminant " + std::to_string(scan.index) + " of f_" + std::to_string(level + 1) +
                    " vanishes at precision " + std::to_string(d.entry(scan.index).precision()) +
                    " but cannot be certified zero; raise the precision");
  }
  return scan;
}

inline Jet product_of(const std::vector<Jet>& factors) {
  Jet acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = acc * factors[k];
  return acc;
}

inline bool is_weierstrass_input(const UniOverJets& g) {
  if (!g.exact() || !g.is_monic() || g.degree() < 1) return false;
  for (const Jet& a : g.tail()) {
    if (sgn(a.constant_term()) != 0) return false;
  }
  return true;
}

}  // namespace detail

/// Discriminant tower of the set germ {g_1 = ... = g_k = 0}, each g a jet in
/// x_1..x_n. Inputs that are exact Weierstrass polynomials in x_n are used as
/// given; anything else is first made x_n-regular and prepared.
inline NormalSystem build_tower_set(const std::vector<Jet>& germs, const GenericityConfig& config = {}) {
  if (germs.empty()) throw Error(ErrorKind::InvalidArgument, "no germs given");
  NormalSystem ns;
  ns.kind = TowerKind::Set;
  ns.context = germs.front().context();
  ns.config = config;
  ns.inputs = germs;
  const std::size_t n = ns.context->arity();
  ns.change = identity_matrix(n);
  ns.precision = germs.front().precision();
  ns.exact_input = true;
  for (const Jet& g : germs) {
    check_same_context(g, germs.front());
    ns.precision = std::min(ns.precision, g.precision());
    ns.exact_input = ns.exact_input && g.exact();
    if (g.is_zero()) throw Error(ErrorKind::ZeroGerm, "germ is zero at precision " + std::to_string(g.precision()));
  }
  const std::size_t top = n - 1;

  // Level n.
  std::optional<UniOverJets> direct;
  if (ns.exact_input) {
    try {
      for (const Jet& g : germs) {
        UniOverJets u = UniOverJets::from_jet(g, top);
        if (!detail::is_weierstrass_input(u)) {
          direct.reset();
          break;
        }
        direct = direct ? uni_mul(*direct, u) : u;
      }
    } catch (const Error&) {
      direct.reset();
    }
  }
  if (direct) {
    ns.levels.push_back({static_cast<int>(n), *direct, Jet::constant(ns.context, Scalar(1), direct->precision()), 0,
                         std::nullopt, LinearChange::identity(0, n)});
  } else {
    const Jet product = detail::product_of(germs);
    ChangeResult ch = generic_linear_change(product, top, 0, config);
    PreparationResult prep = weierstrass_prepare(ch.transformed, top);
    ns.levels.push_back({static_cast<int>(n), prep.weierstrass, prep.unit, 0, std::nullopt, ch.change});
    detail::compose_change(ns, ch.change);
  }

  // Levels n-1 .. 1, then the base.
  for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
    const UniOverJets& above = ns.levels.back().f;
    const GDiscVector d = generalized_discriminants(above);
    const DiscriminantScan scan = detail::require_scan(d, i);
    const Jet& delta = d.entry(scan.index);
    if (i == 0) {
      ns.base = {delta.constant_term(), 0, scan.index};
      break;
    }
    if (sgn(delta.constant_term()) != 0) {
      ns.levels.push_back({i, UniOverJets::one(static_cast<std::size_t>(i - 1), ns.context, delta.precision()), delta, 0,
                           scan.index, LinearChange::identity(0, static_cast<std::size_t>(i))});
      ns.base = {delta.constant_term(), 0, scan.index};
      break;
    }
    const std::size_t var = static_cast<std::size_t>(i - 1);
    ChangeResult ch = generic_linear_change(delta, var, 0, config);
    detail::transport_levels(ns.levels, ch.change);
    detail::compose_change(ns, ch.change);
    PreparationResult prep = weierstrass_prepare(ch.transformed, var);
    ns.levels.push_back({i, prep.weierstrass, prep.unit, 0, scan.index, ch.change});
  }
  return ns;
}

/// Tower of the function germs g_1..g_p (jets in x_2..x_n) built on the graph
/// product prod (x_1 - g_m).
inline NormalSystem build_tower_function(const std::vector<Jet>& germs, const GenericityConfig& config = {}) {
  if (germs.empty()) throw Error(ErrorKind::InvalidArgument, "no germs given");
  NormalSystem ns;
  ns.kind = TowerKind::Function;
  ns.context = germs.front().context();
  ns.config = config;
  ns.inputs = germs;
  const std::size_t n = ns.context->arity();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "function towers need at least two variables");
  ns.change = identity_matrix(n);
  ns.precision = germs.front().precision();
  ns.exact_input = true;
  std::vector<Jet> factors;
  for (const Jet& g : germs) {
    check_same_context(g, germs.front());
    if (g.is_zero()) throw Error(ErrorKind::ZeroGerm, "germ is zero at precision " + std::to_string(g.precision()));
    ns.splitting.push_back(split_linear_parts(g));
    ns.precision = std::min(ns.precision, g.precision());
    ns.exact_input = ns.exact_input && g.exact();
    factors.push_back(Jet::variable(ns.context, 0, g.precision()) - g);
  }
  const std::size_t top = n - 1;

  const Jet product = detail::product_of(factors);
  ChangeResult top_change = generic_linear_change(product, top, 1, config);
  PreparationResult top_prep = weierstrass_prepare(top_change.transformed, top);
  ns.levels.push_back({static_cast<int>(n), top_prep.weierstrass, top_prep.unit, 0, std::nullopt, top_change.change});
  detail::compose_change(ns, top_change.change);

  for (int i = static_cast<int>(n) - 1; i >= 1; --i) {
    const GDiscVector d = generalized_discriminants(ns.levels.back().f);
    const DiscriminantScan scan = detail::require_scan(d, i);
    const X1Extraction ex = extract_x1_power(d.entry(scan.index));
    if (!ex.certified && ex.q > 0) {
      ns.caveats.push_back("x_1^" + std::to_string(ex.q) + " divides Delta_" + std::to_string(scan.index) + " of f_" +
                           std::to_string(i + 1) + " only at the stored precision");
    }
    if (sgn(ex.g.constant_term()) != 0) {
      ns.levels.push_back({i, UniOverJets::one(static_cast<std::size_t>(i - 1), ns.context, ex.g.precision()), ex.g,
                           ex.q, scan.index, LinearChange::identity(0, static_cast<std::size_t>(i))});
      ns.base = {ex.g.constant_term(), ex.q, scan.index};
      return ns;
    }
    // G(0) = 0 forces i >= 2: a jet in x_1 alone not divisible by x_1 is a unit.
    const std::size_t var = static_cast<std::size_t>(i - 1);
    ChangeResult ch = generic_linear_change(ex.g, var, 1, config);
    detail::transport_levels(ns.levels, ch.change);
    detail::compose_change(ns, ch.change);
    PreparationResult prep = weierstrass_prepare(ch.transformed, var);
    ns.levels.push_back({i, prep.weierstrass, prep.unit, ex.q, scan.index, ch.change});
  }
  throw Error(ErrorKind::InvalidArgument, "function tower did not terminate");
}

// ---------------------------------------------------------------------------
// Verification

enum class CheckStatus { Pass, Fail, Inconclusive, NumericOnly };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::NumericOnly: return "numeric-only";
  }
  return "unknown";
}

struct CheckEntry {
  std::string condition;  // "(1)".."(6)", "(2')", "(3')"
  std::string check;      // short machine-friendly name
  int level = 0;          // 0 for tower-wide checks
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  std::string witness;
};

struct VerificationReport {
  std::vector<CheckEntry> entries;

  bool all_symbolic_pass() const {
    for (const auto& e : entries) {
      if (e.status == CheckStatus::Fail || e.status == CheckStatus::Inconclusive) return false;
    }
    return true;
  }
  bool any_fail() const {
    for (const auto& e : entries) {
      if (e.status == CheckStatus::Fail) return true;
    }
    return false;
  }
  const CheckEntry* find(std::string_view check, int level) const {
    for (const auto& e : entries) {
      if (e.check == check && e.level == level) return &e;
    }
    return nullptr;
  }
};

namespace detail {

inline std::string jet_witness(const Jet& j) {
  std::string out;
  int shown = 0;
  for (const auto& [m, c] : j.body().terms()) {
    if (shown++ == 4) {
      out += " + ...";
      break;
    }
    if (!out.empty()) out += " + ";
    out += "(" + to_display_string(c) + ")";
    for (std::size_t k = 0; k < j.arity(); ++k) {
      if (m[k] > 0) out += "*" + j.context()->name(k) + (m[k] > 1 ? "^" + std::to_string(m[k]) : "");
    }
  }
  return out.empty() ? "0" : out;
}

// a == b modulo the smaller precision.
inline bool agree(const Jet& a, const Jet& b) {
  const int n = std::min(a.precision(), b.precision());
  return jet_truncate(a, n).body() == jet_truncate(b, n).body();
}

}  // namespace detail

/// Re-derives every symbolic condition from the stored tower data.
inline VerificationReport verify_normal_system(const NormalSystem& ns) {
  VerificationReport report;
  auto add = [&](std::string cond, std::string check, int level, CheckStatus status, std::string detail,
                 std::string witness = {}) {
    report.entries.push_back({std::move(cond), std::move(check), level, status, std::move(detail), std::move(witness)});
  };
  const bool fn = ns.kind == TowerKind::Function;
  if (ns.levels.empty()) {
    add("(1)", "structure", 0, CheckStatus::Fail, "tower has no levels");
    return report;
  }
  // Reconstruction of the top level from the recorded inputs.
  {
    const TowerLevel& top = ns.levels.front();
    std::vector<Jet> factors;
    bool split_ok = true;
    for (std::size_t m = 0; m < ns.inputs.size(); ++m) {
      const Jet& g = ns.inputs[m];
      if (fn) {
        Jet rebuilt = Jet::zero(ns.context, g.precision());
        if (m < ns.splitting.size()) {
          for (std::size_t k = 0; k < ns.splitting[m].size(); ++k) {
            rebuilt = rebuilt + jet_mul_monomial(ns.splitting[m][k], Monomial::variable(k + 1));
          }
        }
        split_ok = split_ok && detail::agree(rebuilt, g);
        factors.push_back(Jet::variable(ns.context, 0, g.precision()) - rebuilt);
      } else {
        factors.push_back(g);
      }
    }
    if (fn) {
      add("(1)", "splitting", 0, split_ok ? CheckStatus::Pass : CheckStatus::Fail,
          "g_m = sum_k x_k b_(m,k) for every input");
    }
    const Jet lhs = jet_substitute_matrix(detail::product_of(factors), ns.change);
    const Jet rhs = top.unit * top.f.to_jet();
    const bool ok = detail::agree(lhs, rhs);
    add("(1)", "reconstruction", top.level, ok ? CheckStatus::Pass : CheckStatus::Fail,
        fn ? "prod (x_1 - g_m) after the recorded change equals u_n f_n" : "prod g_s after the recorded change equals u_n f_n",
        ok ? "" : detail::jet_witness(lhs - rhs));
  }

  for (std::size_t idx = 0; idx < ns.levels.size(); ++idx) {
    const TowerLevel& lvl = ns.levels[idx];
    const int i = lvl.level;

    const bool monic = lvl.f.is_monic();
    add("(1)", "monic", i, monic ? CheckStatus::Pass : CheckStatus::Fail, "f_" + std::to_string(i) + " is monic");
    bool vanish = true;
    std::string bad;
    for (const Jet& a : lvl.f.tail()) {
      if (sgn(a.constant_term()) != 0) {
        vanish = false;
        bad = detail::jet_witness(a);
      }
    }
    add("(1)", "coefficients vanish at origin", i, vanish ? CheckStatus::Pass : CheckStatus::Fail,
        "a_(" + std::to_string(i - 1) + ",j)(0) = 0", bad);
    const bool unit_ok = sgn(lvl.unit.constant_term()) != 0;
    add("(1)", "unit", i, unit_ok ? CheckStatus::Pass : CheckStatus::Fail, "u_" + std::to_string(i) + "(0) != 0",
        unit_ok ? "" : detail::jet_witness(lvl.unit));
    const bool six = lvl.is_one() || (monic && vanish);
    add("(6)", "zero at origin or one", i, six ? CheckStatus::Pass : CheckStatus::Fail,
        "F_" + std::to_string(i) + "(0) = 0 or F_" + std::to_string(i) + " = 1");

    if (idx == 0) continue;
    const TowerLevel& above = ns.levels[idx - 1];
    const std::string cond = fn ? "(2')" : "(2)";
    if (!lvl.disc_index) {
      add(cond, "discriminant index", i, CheckStatus::Fail, "missing discriminant index");
      continue;
    }
    const int j = *lvl.disc_index;
    if (!above.f.is_monic()) {
      add(cond, "discriminant index", i, CheckStatus::Fail, "f above is not monic");
      continue;
    }
    const GDiscVector d = generalized_discriminants(above.f);
    if (j < 1 || j > d.degree()) {
      add(cond, "discriminant index", i, CheckStatus::Fail, "index " + std::to_string(j) + " out of range");
      continue;
    }
    CheckStatus below = CheckStatus::Pass;
    std::string below_witness;
    for (int k = 1; k < j; ++k) {
      const Jet& e = d.entry(k);
      if (!e.is_zero()) {
        below = CheckStatus::Fail;
        below_witness = "Delta_" + std::to_string(k) + " = " + detail::jet_witness(e);
        break;
      }
      if (!e.exact()) below = CheckStatus::Inconclusive;
    }
    add(cond, "vanishing below index", i, below,
        "Delta_(" + std::to_string(i + 1) + ",k)(a_" + std::to_string(i) + ") = 0 for k < " + std::to_string(j),
        below_witness);
    const Jet& dj = d.entry(j);
    const bool nonzero = !dj.is_zero();
    add(cond, "nonvanishing at index", i, nonzero ? CheckStatus::Pass : CheckStatus::Fail,
        "Delta_(" + std::to_string(i + 1) + "," + std::to_string(j) + ") != 0");
    Jet rhs = lvl.unit * lvl.f.to_jet();
    if (lvl.q > 0) rhs = jet_mul_monomial(rhs, Monomial::variable(0, lvl.q));
    const bool identity = detail::agree(dj, rhs);
    add(cond, "discriminant identity", i, identity ? CheckStatus::Pass : CheckStatus::Fail,
        "Delta_(" + std::to_string(i + 1) + "," + std::to_string(j) + ") = u_" + std::to_string(i) + " x_1^" +
            std::to_string(lvl.q) + " f_" + std::to_string(i),
        identity ? "" : detail::jet_witness(dj - rhs));
  }

  // Base.
  const TowerLevel& last = ns.levels.back();
  if (fn) {
    const bool one = last.level == 1 && last.is_one();
    add("(3')", "f_1 is one", 1, one ? CheckStatus::Pass : CheckStatus::Fail, "F_1 = 1");
    const bool base_ok = sgn(ns.base.u0) != 0 && ns.base.u0 == last.unit.constant_term() && ns.base.q0 == last.q;
    add("(3')", "base", 0, base_ok ? CheckStatus::Pass : CheckStatus::Fail,
        "Delta_(1,j_1)(a_0) = u_0 x_1^q_0 with u_0 != 0");
  } else if (last.is_one()) {
    const bool base_ok = sgn(ns.base.u0) != 0 && ns.base.u0 == last.unit.constant_term();
    add("(3)", "base", 0, base_ok ? CheckStatus::Pass : CheckStatus::Fail, "F_0 = 1 and u_0 is a nonzero constant");
  } else if (last.level != 1) {
    add("(3)", "base", 0, CheckStatus::Fail, "tower stops above level 1 without reaching 1");
  } else {
    const GDiscVector d = generalized_discriminants(last.f);
    const int j = ns.base.disc_index;
    if (j < 1 || j > d.degree()) {
      add("(3)", "base", 0, CheckStatus::Fail, "base index out of range");
    } else {
      CheckStatus below = CheckStatus::Pass;
      for (int k = 1; k < j; ++k) {
        if (!d.entry(k).is_zero()) {
          below = CheckStatus::Fail;
          break;
        }
        if (!d.entry(k).exact()) below = CheckStatus::Inconclusive;
      }
      add("(2)", "vanishing below index", 0, below, "Delta_(1,k)(a_0) = 0 for k < " + std::to_string(j));
      const Jet& e = d.entry(j);
      const MultiPoly expected = MultiPoly::constant(e.arity(), ns.base.u0);
      const bool ok = sgn(ns.base.u0) != 0 && e.body() == expected;
      add("(3)", "base", 0, ok ? CheckStatus::Pass : CheckStatus::Fail,
          "Delta_(1," + std::to_string(j) + ")(a_0) is the nonzero constant u_0", ok ? "" : detail::jet_witness(e));
    }
  }

  add("(4)", "polydisc domains", 0, CheckStatus::NumericOnly, "domains of convergence are checked by sampling only");
  add("(5)", "roots inside radius", 0, CheckStatus::NumericOnly, "root moduli are checked by the numeric profile");
  return report;
}

}  // namespace disctower
