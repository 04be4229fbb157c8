#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "disctower/discriminants.hpp"
#include "disctower/hensel.hpp"
#include "disctower/numeric.hpp"
#include "disctower/tower.hpp"
#include "disctower/weierstrass.hpp"

namespace disctower {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Canonical bytes for a report: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace json_io {

[[noreturn]] inline void bad(const std::string& what) {
  throw Error(ErrorKind::ParseError, "malformed document: " + what);
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing '") + key + "'");
  return j.at(key);
}

inline std::string scalar_text(const Scalar& s) { return s.get_num().get_str() + "/" + s.get_den().get_str(); }

inline Scalar scalar_from(const Json& j) {
  if (!j.is_string()) bad("rational must be a string");
  Scalar s;
  if (s.set_str(j.get<std::string>(), 10) != 0 || s.get_den() == 0) bad("rational '" + j.get<std::string>() + "'");
  s.canonicalize();
  return s;
}

inline int int_from(const Json& j) {
  if (!j.is_number_integer()) bad("expected an integer");
  return j.get<int>();
}

inline Json context_json(const VarContext& ctx) {
  Json j = Json::object();
  j["variables"] = ctx.names();
  j["parameters"] = ctx.parameters();
  return j;
}

inline ContextPtr context_from(const Json& j) {
  std::vector<std::string> vars, params;
  for (const auto& v : field(j, "variables")) vars.push_back(v.get<std::string>());
  for (const auto& v : field(j, "parameters")) params.push_back(v.get<std::string>());
  return make_context(vars, params);
}

inline Json poly_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json exps = Json::array();
    for (std::size_t i = 0; i < p.arity(); ++i) exps.push_back(m[i]);
    terms.push_back(Json::array({exps, scalar_text(c)}));
  }
  return terms;
}

inline MultiPoly poly_from(const Json& j, std::size_t arity) {
  if (!j.is_array()) bad("terms must be a list");
  MultiPoly p(arity);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != arity) bad("term");
    Monomial m;
    for (std::size_t i = 0; i < arity; ++i) {
      const int e = int_from(t[0][i]);
      if (e < 0) bad("negative exponent");
      m.set(i, e);
    }
    p.add_term(m, scalar_from(t[1]));
  }
  return p;
}

inline Json jet_json(const Jet& a) {
  Json j = Json::object();
  j["precision"] = a.precision();
  j["exact"] = a.exact();
  j["terms"] = poly_json(a.body());
  return j;
}

inline Jet jet_from(const Json& j, const ContextPtr& ctx) {
  const int n = int_from(field(j, "precision"));
  if (n < 1) bad("precision must be positive");
  const Json& ex = field(j, "exact");
  if (!ex.is_boolean()) bad("exact must be a boolean");
  return Jet(ctx, poly_from(field(j, "terms"), ctx->arity()), n, ex.get<bool>());
}

inline Json jets_json(const std::vector<Jet>& v) {
  Json j = Json::array();
  for (const Jet& a : v) j.push_back(jet_json(a));
  return j;
}

inline std::vector<Jet> jets_from(const Json& j, const ContextPtr& ctx) {
  if (!j.is_array()) bad("expected a list of jets");
  std::vector<Jet> out;
  for (const auto& e : j) out.push_back(jet_from(e, ctx));
  return out;
}

inline Json uni_json(const UniOverJets& f) {
  Json j = Json::object();
  j["variable"] = f.var();
  j["coefficients"] = jets_json(f.coeffs());
  return j;
}

inline UniOverJets uni_from(const Json& j, const ContextPtr& ctx) {
  const int var = int_from(field(j, "variable"));
  if (var < 0) bad("variable index");
  return UniOverJets(static_cast<std::size_t>(var), jets_from(field(j, "coefficients"), ctx));
}

inline Json matrix_json(const ScalarMatrix& m) {
  Json j = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& s : row) r.push_back(scalar_text(s));
    j.push_back(r);
  }
  return j;
}

inline ScalarMatrix matrix_from(const Json& j) {
  if (!j.is_array()) bad("matrix must be a list of rows");
  ScalarMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) bad("matrix row");
    std::vector<Scalar> r;
    for (const auto& s : row) r.push_back(scalar_from(s));
    m.push_back(std::move(r));
  }
  return m;
}

inline Json change_json(const LinearChange& c) {
  Json j = Json::object();
  j["start"] = c.start();
  j["matrix"] = matrix_json(c.matrix());
  return j;
}

inline LinearChange change_from(const Json& j) {
  const int start = int_from(field(j, "start"));
  if (start < 0) bad("block start");
  return LinearChange(static_cast<std::size_t>(start), matrix_from(field(j, "matrix")));
}

inline Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

inline std::optional<int> optional_int_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return int_from(j);
}

inline Json config_json(const GenericityConfig& c) {
  Json j = Json::object();
  j["height_bound"] = c.height_bound;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["random_attempts"] = c.random_attempts;
  return j;
}

inline GenericityConfig config_from(const Json& j) {
  GenericityConfig c;
  c.height_bound = int_from(field(j, "height_bound"));
  const Json& seed = field(j, "seed");
  if (!seed.is_null()) {
    if (!seed.is_number_unsigned()) bad("seed must be a natural number");
    c.seed = seed.get<std::uint64_t>();
  }
  c.random_attempts = int_from(field(j, "random_attempts"));
  return c;
}

inline Json kind_header(const char* kind, const VarContext* ctx) {
  Json j = Json::object();
  j["kind"] = kind;
  if (ctx) {
    j["variables"] = ctx->names();
    j["parameters"] = ctx->parameters();
  }
  return j;
}

inline void expect_kind(const Json& j, const char* kind) {
  const Json& k = field(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) bad(std::string("expected kind '") + kind + "'");
}

}  // namespace json_io

// --- jets and polynomials ---------------------------------------------------

inline Json to_json(const Jet& a) {
  Json j = json_io::kind_header("jet", a.context().get());
  j.update(json_io::jet_json(a));
  return j;
}

inline Jet jet_from_json(const Json& j) {
  json_io::expect_kind(j, "jet");
  return json_io::jet_from(j, json_io::context_from(j));
}

inline Json to_json(const UniOverJets& f) {
  Json j = json_io::kind_header("polynomial", f.context().get());
  j.update(json_io::uni_json(f));
  return j;
}

inline UniOverJets polynomial_from_json(const Json& j) {
  json_io::expect_kind(j, "polynomial");
  return json_io::uni_from(j, json_io::context_from(j));
}

inline Json to_json(const LinearChange& c) {
  Json j = json_io::kind_header("linear-change", nullptr);
  j.update(json_io::change_json(c));
  return j;
}

inline LinearChange linear_change_from_json(const Json& j) {
  json_io::expect_kind(j, "linear-change");
  return json_io::change_from(j);
}

// --- discriminants -------------------------------------------------------------

inline Json to_json(const GDiscVector& d) {
  if (d.entries.empty()) throw Error(ErrorKind::InvalidArgument, "empty discriminant vector");
  Json j = json_io::kind_header("gdisc", d.entries.front().context().get());
  j["entries"] = json_io::jets_json(d.entries);
  return j;
}

inline GDiscVector gdisc_from_json(const Json& j) {
  json_io::expect_kind(j, "gdisc");
  return {json_io::jets_from(json_io::field(j, "entries"), json_io::context_from(j))};
}

inline Json to_json(const DistinctRootReport& r) {
  Json j = json_io::kind_header("distinct-roots", nullptr);
  const bool det = r.status == DistinctRootReport::Status::Determined;
  j["status"] = det ? "determined" : "inconclusive";
  j[det ? "count" : "index"] = det ? r.count : r.index;
  return j;
}

inline DistinctRootReport distinct_roots_from_json(const Json& j) {
  json_io::expect_kind(j, "distinct-roots");
  const Json& s = json_io::field(j, "status");
  if (s == "determined") return DistinctRootReport::determined(json_io::int_from(json_io::field(j, "count")));
  if (s == "inconclusive") return DistinctRootReport::inconclusive(json_io::int_from(json_io::field(j, "index")));
  json_io::bad("status");
}

// --- preparation -----------------------------------------------------------------

inline Json to_json(const PreparationResult& r) {
  Json j = json_io::kind_header("preparation", r.unit.context().get());
  j["precision"] = r.precision;
  j["unit"] = json_io::jet_json(r.unit);
  j["weierstrass"] = json_io::uni_json(r.weierstrass);
  return j;
}

inline PreparationResult preparation_from_json(const Json& j) {
  json_io::expect_kind(j, "preparation");
  const ContextPtr ctx = json_io::context_from(j);
  return {json_io::jet_from(json_io::field(j, "unit"), ctx), json_io::uni_from(json_io::field(j, "weierstrass"), ctx),
          json_io::int_from(json_io::field(j, "precision"))};
}

// --- towers ------------------------------------------------------------------------

inline Json to_json(const NormalSystem& ns) {
  using namespace json_io;
  Json j = kind_header("normal-system", ns.context.get());
  j["tower"] = std::string(to_string(ns.kind));
  j["precision"] = ns.precision;
  j["exact_input"] = ns.exact_input;
  j["config"] = config_json(ns.config);
  j["inputs"] = jets_json(ns.inputs);
  Json split = Json::array();
  for (const auto& b : ns.splitting) split.push_back(jets_json(b));
  j["splitting"] = split;
  j["change"] = matrix_json(ns.change);
  Json levels = Json::array();
  for (const TowerLevel& l : ns.levels) {
    Json e = Json::object();
    e["level"] = l.level;
    e["degree"] = l.f.degree();
    e["disc_index"] = optional_int(l.disc_index);
    e["q"] = l.q;
    e["f"] = uni_json(l.f);
    e["unit"] = jet_json(l.unit);
    e["change"] = change_json(l.change);
    levels.push_back(e);
  }
  j["levels"] = levels;
  Json base = Json::object();
  base["u0"] = scalar_text(ns.base.u0);
  base["q0"] = ns.base.q0;
  base["disc_index"] = ns.base.disc_index;
  j["base"] = base;
  j["caveats"] = ns.caveats;
  return j;
}

inline NormalSystem normal_system_from_json(const Json& j) {
  using namespace json_io;
  expect_kind(j, "normal-system");
  NormalSystem ns;
  ns.context = context_from(j);
  const Json& tower = field(j, "tower");
  if (tower == "set") {
    ns.kind = TowerKind::Set;
  } else if (tower == "function") {
    ns.kind = TowerKind::Function;
  } else {
    bad("tower must be 'set' or 'function'");
  }
  ns.precision = int_from(field(j, "precision"));
  const Json& ex = field(j, "exact_input");
  if (!ex.is_boolean()) bad("exact_input must be a boolean");
  ns.exact_input = ex.get<bool>();
  ns.config = config_from(field(j, "config"));
  ns.inputs = jets_from(field(j, "inputs"), ns.context);
  for (const auto& b : field(j, "splitting")) ns.splitting.push_back(jets_from(b, ns.context));
  ns.change = matrix_from(field(j, "change"));
  for (const auto& e : field(j, "levels")) {
    TowerLevel l;
    l.level = int_from(field(e, "level"));
    l.disc_index = optional_int_from(field(e, "disc_index"));
    l.q = int_from(field(e, "q"));
    l.f = uni_from(field(e, "f"), ns.context);
    if (int_from(field(e, "degree")) != l.f.degree()) bad("level degree disagrees with f");
    l.unit = jet_from(field(e, "unit"), ns.context);
    l.change = change_from(field(e, "change"));
    ns.levels.push_back(std::move(l));
  }
  const Json& base = field(j, "base");
  ns.base.u0 = scalar_from(field(base, "u0"));
  ns.base.q0 = int_from(field(base, "q0"));
  ns.base.disc_index = int_from(field(base, "disc_index"));
  for (const auto& c : field(j, "caveats")) ns.caveats.push_back(c.get<std::string>());
  return ns;
}

inline Json to_json(const VerificationReport& r) {
  Json j = json_io::kind_header("verification", nullptr);
  j["all_symbolic_pass"] = r.all_symbolic_pass();
  Json entries = Json::array();
  for (const CheckEntry& e : r.entries) {
    Json o = Json::object();
    o["condition"] = e.condition;
    o["check"] = e.check;
    o["level"] = e.level;
    o["status"] = std::string(to_string(e.status));
    o["detail"] = e.detail;
    o["witness"] = e.witness;
    entries.push_back(o);
  }
  j["entries"] = entries;
  return j;
}

inline VerificationReport verification_from_json(const Json& j) {
  using namespace json_io;
  expect_kind(j, "verification");
  VerificationReport r;
  for (const auto& o : field(j, "entries")) {
    CheckEntry e;
    e.condition = field(o, "condition").get<std::string>();
    e.check = field(o, "check").get<std::string>();
    e.level = int_from(field(o, "level"));
    const std::string s = field(o, "status").get<std::string>();
    if (s == "pass") {
      e.status = CheckStatus::Pass;
    } else if (s == "fail") {
      e.status = CheckStatus::Fail;
    } else if (s == "inconclusive") {
      e.status = CheckStatus::Inconclusive;
    } else if (s == "numeric-only") {
      e.status = CheckStatus::NumericOnly;
    } else {
      bad("status '" + s + "'");
    }
    e.detail = field(o, "detail").get<std::string>();
    e.witness = field(o, "witness").get<std::string>();
    r.entries.push_back(std::move(e));
  }
  if (field(j, "all_symbolic_pass") != r.all_symbolic_pass()) bad("all_symbolic_pass disagrees with the entries");
  return r;
}

// --- lifting and numerics ----------------------------------------------------------

inline Json to_json(const BranchSolution& s) {
  if (s.branches.empty()) throw Error(ErrorKind::InvalidArgument, "no branches");
  Json j = json_io::kind_header("branches", s.branches.front().context().get());
  j["precision"] = s.precision;
  j["branches"] = json_io::jets_json(s.branches);
  return j;
}

inline BranchSolution branches_from_json(const Json& j) {
  json_io::expect_kind(j, "branches");
  const ContextPtr ctx = json_io::context_from(j);
  return {json_io::jets_from(json_io::field(j, "branches"), ctx), json_io::int_from(json_io::field(j, "precision"))};
}

inline Json to_json(const RootProfile& p) {
  Json j = json_io::kind_header("profile", nullptr);
  j["rel_tol"] = p.rel_tol;
  j["abs_floor"] = p.abs_floor;
  j["constant"] = p.constant();
  j["any_escape"] = p.any_escape();
  Json samples = Json::array();
  for (const ProfileSample& s : p.samples) {
    Json o = Json::object();
    o["point"] = s.point;
    o["count"] = s.count;
    o["max_modulus"] = s.max_modulus;
    o["escaped"] = s.escaped;
    samples.push_back(o);
  }
  j["samples"] = samples;
  return j;
}

inline RootProfile profile_from_json(const Json& j) {
  using namespace json_io;
  expect_kind(j, "profile");
  RootProfile p;
  p.rel_tol = field(j, "rel_tol").get<double>();
  p.abs_floor = field(j, "abs_floor").get<double>();
  for (const auto& o : field(j, "samples")) {
    ProfileSample s;
    for (const auto& x : field(o, "point")) s.point.push_back(x.get<double>());
    s.count = field(o, "count").get<std::size_t>();
    s.max_modulus = field(o, "max_modulus").get<double>();
    s.escaped = field(o, "escaped").get<bool>();
    p.samples.push_back(std::move(s));
  }
  return p;
}

}  // namespace disctower
