#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disctower/error.hpp"
#include "disctower/jet.hpp"

namespace disctower {

inline const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"gdisc",     "distinct-roots", "prepare", "tower-set",
                                              "tower-fn",  "verify",         "lift",    "profile"};
  return names;
}

inline bool is_subcommand(std::string_view s) {
  for (const auto& n : subcommand_names()) {
    if (n == s) return true;
  }
  return false;
}

/// The payload line of a document: `tower-set g1, g2`, `prepare f in x2`,
/// `lift F in x1 from x2, 2*x2 to 8`.
struct Directive {
  std::string command;
  std::vector<Jet> args;
  std::optional<std::size_t> var;
  std::vector<Jet> seeds;
  std::optional<int> target;
  int line = 0;
};

struct SourceDocument {
  ContextPtr context;
  int precision = 0;
  std::vector<std::pair<std::string, Jet>> bindings;
  std::optional<Directive> directive;

  const Jet* binding(const std::string& name) const {
    for (const auto& [n, j] : bindings) {
      if (n == name) return &j;
    }
    return nullptr;
  }
};

namespace detail {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int column = 0;
};

inline std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      // Dashes join a leading word only when that spells a subcommand.
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      std::string word(line.substr(i, j - i));
      if (out.empty()) {
        std::size_t k = j;
        while (k < line.size() && (std::isalnum(static_cast<unsigned char>(line[k])) || line[k] == '-')) ++k;
        const std::string longer(line.substr(i, k - i));
        if (longer != word && is_subcommand(longer)) word = longer, j = k;
      }
      out.push_back({Tok::Ident, word, col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::Number, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (std::string_view("+-*/^(),=").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(ErrorKind::ParseError, line_no, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

inline bool is_reserved(const std::string& w) {
  return w == "vars" || w == "param" || w == "precision" || w == "in" || w == "from" || w == "to" || is_subcommand(w);
}

// Polynomial value under construction; truncation clears `exact`.
struct Value {
  MultiPoly poly;
  bool exact = true;
};

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, int line_no, const SourceDocument& doc)
      : toks_(toks), line_(line_no), doc_(doc), arity_(doc.context->arity()) {}

  std::size_t pos = 0;

  const Token& peek() const { return toks_[pos]; }
  bool at_symbol(char c) const { return peek().kind == Tok::Symbol && peek().text[0] == c; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    const std::string what = t.kind == Tok::End ? "end of line" : "'" + t.text + "'";
    throw ParseError(ErrorKind::ParseError, line_, t.column, msg + " at " + what);
  }

  Value expr() {
    Value acc;
    if (at_symbol('-')) {
      ++pos;
      acc = term();
      acc.poly = -acc.poly;
    } else {
      acc = term();
    }
    while (at_symbol('+') || at_symbol('-')) {
      const bool minus = peek().text[0] == '-';
      ++pos;
      Value rhs = term();
      acc.poly = minus ? acc.poly - rhs.poly : acc.poly + rhs.poly;
      acc.exact = acc.exact && rhs.exact;
    }
    return acc;
  }

 private:
  Value term() {
    Value acc = factor();
    while (at_symbol('*')) {
      ++pos;
      Value rhs = factor();
      acc = multiply(acc, rhs);
    }
    return acc;
  }

  Value multiply(const Value& a, const Value& b) const {
    bool dropped = false;
    MultiPoly p = MultiPoly::multiply(a.poly, b.poly, doc_.precision, &dropped);
    return {std::move(p), a.exact && b.exact && !dropped};
  }

  Value factor() {
    Value b = base();
    if (!at_symbol('^')) return b;
    ++pos;
    if (peek().kind != Tok::Number) fail("expected a natural exponent");
    const long e = std::stol(peek().text);
    ++pos;
    Value out{MultiPoly::constant(arity_, Scalar(1)), true};
    for (long k = 0; k < e; ++k) {
      out = multiply(out, b);
      if (out.poly.is_zero() && !out.exact) break;
    }
    return out;
  }

  Value base() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      mpz_class num(t.text);
      ++pos;
      mpz_class den(1);
      if (at_symbol('/')) {
        ++pos;
        if (peek().kind != Tok::Number) fail("expected a positive denominator");
        den = mpz_class(peek().text);
        if (den == 0) fail("denominator must be positive");
        ++pos;
      }
      Scalar s(num, den);
      s.canonicalize();
      return {MultiPoly::constant(arity_, s), true};
    }
    if (t.kind == Tok::Ident) {
      if (is_reserved(t.text)) fail("expected an expression");
      if (auto v = doc_.context->index_of(t.text)) {
        ++pos;
        return {MultiPoly::variable(arity_, *v), true};
      }
      if (const Jet* j = doc_.binding(t.text)) {
        ++pos;
        return {j->body(), j->exact()};
      }
      throw ParseError(ErrorKind::UndeclaredIdentifier, line_, t.column, "'" + t.text + "' is not declared");
    }
    if (at_symbol('(')) {
      ++pos;
      Value v = expr();
      if (!at_symbol(')')) fail("expected ')'");
      ++pos;
      return v;
    }
    fail("expected a number, name or '('");
  }

  const std::vector<Token>& toks_;
  int line_;
  const SourceDocument& doc_;
  std::size_t arity_;
};

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace detail

/// Parses a document:
///
///     vars t, x, y
///     param t
///     precision 12
///     g = 4 + t + t^2
///     tower-set x*y*(y - x)*(y - (3+t)*x)*(y - g*x)
///
/// `precision_override` replaces the declared precision.
inline SourceDocument parse_document(const std::string& text, std::optional<int> precision_override = {}) {
  using detail::Tok;
  SourceDocument doc;
  std::vector<std::string> vars;
  std::vector<std::string> params;
  std::optional<int> declared;
  bool header_done = false;
  auto finish_header = [&](int line_no, int col) {
    if (header_done) return;
    if (vars.empty()) throw ParseError(ErrorKind::ParseError, line_no, col, "'vars' must come first");
    for (const auto& p : params) {
      if (std::find(vars.begin(), vars.end(), p) == vars.end()) {
        throw ParseError(ErrorKind::UndeclaredIdentifier, line_no, col, "parameter '" + p + "' is not a variable");
      }
    }
    doc.context = make_context(vars, params);
    doc.precision = precision_override ? *precision_override : declared.value_or(10);
    if (doc.precision < 1) throw ParseError(ErrorKind::ParseError, line_no, col, "precision must be at least 1");
    header_done = true;
  };

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string raw = text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    start = end + 1;
    ++line_no;
    const auto toks = detail::tokenize(detail::strip_comment(raw), line_no);
    if (toks.front().kind == Tok::End) {
      if (end == text.size()) break;
      continue;
    }
    const detail::Token& head = toks.front();
    auto fail_at = [&](const detail::Token& t, const std::string& msg) {
      throw ParseError(ErrorKind::ParseError, line_no, t.column, msg);
    };

    if (head.kind == Tok::Ident && (head.text == "vars" || head.text == "param")) {
      if (header_done) fail_at(head, "'" + head.text + "' must precede bindings and directives");
      auto& into = head.text == "vars" ? vars : params;
      std::size_t k = 1;
      while (true) {
        if (toks[k].kind != Tok::Ident || detail::is_reserved(toks[k].text)) fail_at(toks[k], "expected a name");
        into.push_back(toks[k].text);
        ++k;
        if (toks[k].kind == Tok::End) break;
        if (toks[k].text != ",") fail_at(toks[k], "expected ','");
        ++k;
      }
      continue;
    }
    if (head.kind == Tok::Ident && head.text == "precision") {
      if (header_done) fail_at(head, "'precision' must precede bindings and directives");
      if (toks[1].kind != Tok::Number) fail_at(toks[1], "expected a natural number");
      if (toks[2].kind != Tok::End) fail_at(toks[2], "unexpected token");
      declared = std::stoi(toks[1].text);
      if (*declared < 1) fail_at(toks[1], "precision must be at least 1");
      continue;
    }
    finish_header(line_no, head.column);

    if (head.kind == Tok::Ident && is_subcommand(head.text)) {
      if (doc.directive) fail_at(head, "only one directive is allowed");
      Directive d;
      d.command = head.text;
      d.line = line_no;
      detail::ExprParser p(toks, line_no, doc);
      p.pos = 1;
      auto as_jet = [&](const detail::Value& v) { return Jet(doc.context, v.poly, doc.precision, v.exact); };
      auto list = [&](std::vector<Jet>& out) {
        out.push_back(as_jet(p.expr()));
        while (p.at_symbol(',')) {
          ++p.pos;
          out.push_back(as_jet(p.expr()));
        }
      };
      if (p.peek().kind != Tok::End && !p.at_word("in")) list(d.args);
      if (p.at_word("in")) {
        ++p.pos;
        const detail::Token& v = p.peek();
        auto idx = v.kind == Tok::Ident ? doc.context->index_of(v.text) : std::nullopt;
        if (!idx) {
          if (v.kind == Tok::Ident) {
            throw ParseError(ErrorKind::UndeclaredIdentifier, line_no, v.column, "'" + v.text + "' is not a variable");
          }
          p.fail("expected a variable");
        }
        d.var = *idx;
        ++p.pos;
      }
      if (p.at_word("from")) {
        ++p.pos;
        list(d.seeds);
      }
      if (p.at_word("to")) {
        ++p.pos;
        if (p.peek().kind != Tok::Number) p.fail("expected a natural number");
        d.target = std::stoi(p.peek().text);
        ++p.pos;
      }
      if (p.peek().kind != Tok::End) p.fail("unexpected token");
      doc.directive = std::move(d);
      continue;
    }

    if (head.kind == Tok::Ident && toks[1].kind == Tok::Symbol && toks[1].text == "=") {
      if (detail::is_reserved(head.text)) fail_at(head, "'" + head.text + "' is reserved");
      if (doc.context->index_of(head.text)) fail_at(head, "'" + head.text + "' is a variable");
      if (doc.binding(head.text)) fail_at(head, "'" + head.text + "' is already bound");
      detail::ExprParser p(toks, line_no, doc);
      p.pos = 2;
      detail::Value v = p.expr();
      if (p.peek().kind != Tok::End) p.fail("unexpected token");
      doc.bindings.emplace_back(head.text, Jet(doc.context, v.poly, doc.precision, v.exact));
      continue;
    }
    fail_at(head, "expected 'vars', 'param', 'precision', a binding or a directive");
  }
  if (!header_done) finish_header(line_no, 1);
  return doc;
}

/// Parses one expression over an existing context, as a jet at `precision`.
inline Jet parse_expression(const std::string& text, const ContextPtr& ctx, int precision) {
  SourceDocument doc;
  doc.context = ctx;
  doc.precision = precision;
  const auto toks = detail::tokenize(text, 1);
  detail::ExprParser p(toks, 1, doc);
  detail::Value v = p.expr();
  if (p.peek().kind != detail::Tok::End) p.fail("unexpected token");
  return Jet(ctx, v.poly, precision, v.exact);
}

/// Canonical text form: terms by descending graded-lex order, `c*x1^2*x2`.
inline std::string format_poly(const MultiPoly& p, const VarContext& ctx) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Scalar mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < ctx.arity(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ctx.name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace disctower
