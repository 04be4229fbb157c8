#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disctower/document.hpp"
#include "disctower/serialize.hpp"

namespace disctower {

struct CliFlags {
  std::optional<int> precision;
  int height_bound = 3;
  double tolerance = 1e-8;
  double abs_floor = 1e-10;
  int grid = 5;
  double radius = 0.5;
  std::optional<double> escape;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  int exit_code = 0;
  Json report;             // null on usage errors
  std::string diagnostic;  // for stderr
};

namespace cli_detail {

inline bool is_usage_error(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::UndeclaredIdentifier || k == ErrorKind::UnknownSubcommand;
}

inline Json config_header(const CliFlags& f) {
  Json c = Json::object();
  c["height_bound"] = f.height_bound;
  c["seed"] = f.seed ? Json(*f.seed) : Json(nullptr);
  c["tolerance"] = f.tolerance;
  c["abs_floor"] = f.abs_floor;
  c["grid"] = f.grid;
  c["radius"] = f.radius;
  c["escape"] = f.escape ? Json(*f.escape) : Json(nullptr);
  return c;
}

inline GenericityConfig genericity(const CliFlags& f) {
  GenericityConfig c;
  c.height_bound = f.height_bound;
  c.seed = f.seed;
  return c;
}

inline std::size_t distinguished(const SourceDocument& doc) {
  return doc.directive->var.value_or(doc.context->arity() - 1);
}

inline const Jet& single_argument(const Directive& d) {
  if (d.args.size() != 1) {
    throw ParseError(ErrorKind::ParseError, d.line, 1, "'" + d.command + "' takes exactly one expression");
  }
  return d.args.front();
}

inline void validate(const CliFlags& f) {
  auto usage = [](const std::string& m) { throw Error(ErrorKind::InvalidArgument, m); };
  if (f.precision && *f.precision < 1) usage("--precision must be at least 1");
  if (f.height_bound < 1) usage("--height-bound must be at least 1");
  if (!(f.tolerance > 0) || !(f.abs_floor > 0)) usage("--tolerance must be positive");
  if (f.grid < 1) usage("--grid must be at least 1");
  if (!(f.radius > 0)) usage("--radius must be positive");
  if (f.escape && !(*f.escape > 0)) usage("--escape must be positive");
}

inline Json run_document(const std::string& name, const SourceDocument& doc, const CliFlags& flags) {
  if (!doc.directive) throw ParseError(ErrorKind::ParseError, 1, 1, "document has no directive");
  const Directive& d = *doc.directive;
  if (d.command != name) {
    throw ParseError(ErrorKind::ParseError, d.line, 1, "document directive is '" + d.command + "', not '" + name + "'");
  }
  if (name == "tower-set") return to_json(build_tower_set(d.args, genericity(flags)));
  if (name == "tower-fn") return to_json(build_tower_function(d.args, genericity(flags)));

  const Jet& f = single_argument(d);
  const std::size_t var = distinguished(doc);
  if (name == "prepare") return to_json(weierstrass_prepare(f, var));
  if (name == "lift") {
    if (d.seeds.empty()) throw ParseError(ErrorKind::ParseError, d.line, 1, "'lift' needs a 'from' clause");
    return to_json(hensel_lift_branches(f, var, d.seeds, d.target.value_or(doc.precision)));
  }
  const UniOverJets uni = UniOverJets::from_jet(f, var);
  if (name == "gdisc") return to_json(generalized_discriminants(uni));
  if (name == "distinct-roots") return to_json(count_distinct_roots(uni));
  // profile
  SampleRegion region;
  region.delta.assign(var, flags.radius);
  if (flags.escape) region.epsilon.assign(doc.context->arity(), *flags.escape);
  region.resolution = flags.grid;
  return to_json(root_count_profile(uni, region, ClusterConfig{flags.tolerance, flags.abs_floor}));
}

}  // namespace cli_detail

/// Runs one subcommand on a source document (or, for verify, a normal-system
/// report) and wraps the result in a reproducibility header.
inline RunResult run_subcommand(const std::string& name, const std::string& input, const CliFlags& flags) {
  RunResult out;
  Json report = Json::object();
  report["tool"] = "disctower";
  report["version"] = kToolVersion;
  report["subcommand"] = name;
  report["precision"] = nullptr;
  report["config"] = cli_detail::config_header(flags);
  try {
    if (!is_subcommand(name)) throw Error(ErrorKind::UnknownSubcommand, "'" + name + "'");
    cli_detail::validate(flags);
  } catch (const Error& e) {
    out.diagnostic = e.what();
    out.exit_code = 2;
    return out;
  }
  try {
    if (name == "verify") {
      Json doc;
      try {
        doc = Json::parse(input);
      } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
      }
      // accept a whole tower-set / tower-fn report as well as its result
      if (doc.is_object() && !doc.contains("kind") && doc.contains("result")) doc = Json(doc["result"]);
      const NormalSystem ns = normal_system_from_json(doc);
      report["precision"] = ns.precision;
      report["result"] = to_json(verify_normal_system(ns));
    } else {
      const SourceDocument doc = parse_document(input, flags.precision);
      report["precision"] = doc.precision;
      report["result"] = cli_detail::run_document(name, doc, flags);
    }
    report["status"] = "ok";
  } catch (const Error& e) {
    out.diagnostic = e.what();
    if (cli_detail::is_usage_error(e.kind())) {
      out.exit_code = 2;
      return out;
    }
    report["status"] = "error";
    Json err = Json::object();
    err["kind"] = std::string(to_string(e.kind()));
    err["message"] = e.what();
    report["error"] = err;
    out.exit_code = 1;
  }
  out.report = std::move(report);
  return out;
}

}  // namespace disctower
