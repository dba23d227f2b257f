/*
 * Copyright 2026 The dioph Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Existential formulas: a parameter list, a list of existentially bound
// witnesses, and a negation-normal-form body over atoms `p = 0` / `p != 0`.
//
// Surface grammar:
//
//   formula := "params" ident* "." ["exists" ident+ "."] body
//   body    := and ("|" and)*
//   and     := unit ("&" unit)*
//   unit    := atom | "!" unit | "(" body ")"
//   atom    := poly ("=" | "!=") poly
//
// Identifiers starting with '_' are reserved for compiler-generated
// variables. They parse (so compiler output round-trips) but fresh-name
// generation always steps around whatever the formula already uses.

#ifndef DIOPH_FORMULA_HPP_
#define DIOPH_FORMULA_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dioph/lexer.hpp"
#include "dioph/poly.hpp"

namespace dioph {

enum class Relation { kEq, kNeq };

struct Atom {
  Polynomial lhs;
  Relation rel = Relation::kEq;

  friend bool operator==(const Atom&, const Atom&) = default;
};

class Body {
 public:
  enum class Kind { kAtom, kAnd, kOr };

  Body() : Body(Atom{}) {}
  explicit Body(Atom atom) : kind_(Kind::kAtom), atom_(std::move(atom)) {}

  static Body eq(Polynomial p) { return Body(Atom{std::move(p), Relation::kEq}); }
  static Body neq(Polynomial p) { return Body(Atom{std::move(p), Relation::kNeq}); }

  /// The always-true body `0 = 0`.
  static Body truth() { return eq(Polynomial()); }

  /// Flattened conjunction; a single child is returned as is and the empty
  /// conjunction is `0 = 0`.
  static Body conj(std::vector<Body> children) { return junction(Kind::kAnd, std::move(children)); }

  static Body disj(std::vector<Body> children) {
    if (children.empty()) throw std::invalid_argument("empty disjunction");
    return junction(Kind::kOr, std::move(children));
  }

  Kind kind() const { return kind_; }
  bool is_atom() const { return kind_ == Kind::kAtom; }
  const Atom& atom() const {
    if (kind_ != Kind::kAtom) throw std::logic_error("Body::atom on a junction");
    return atom_;
  }
  const std::vector<Body>& children() const { return children_; }

  template <typename Fn>
  void for_each_atom(Fn&& fn) const {
    if (is_atom()) {
      fn(atom_);
      return;
    }
    for (const auto& c : children_) c.for_each_atom(fn);
  }

  friend bool operator==(const Body&, const Body&) = default;

 private:
  static Body junction(Kind k, std::vector<Body> children) {
    std::vector<Body> flat;
    for (auto& c : children) {
      if (c.kind_ == k) {
        for (auto& g : c.children_) flat.push_back(std::move(g));
      } else {
        flat.push_back(std::move(c));
      }
    }
    if (flat.empty()) return truth();
    if (flat.size() == 1) return std::move(flat.front());
    Body b;
    b.kind_ = k;
    b.children_ = std::move(flat);
    return b;
  }

  Kind kind_;
  Atom atom_;
  std::vector<Body> children_;
};

/// Least syntactic class containing a formula. The order is the inclusion
/// chain single-equation < conjunctive < positive-existential < existential.
enum class SyntacticClass {
  kSingleEquation = 0,
  kConjunctive = 1,
  kPositiveExistential = 2,
  kExistential = 3,
};

inline const char* class_name(SyntacticClass c) {
  switch (c) {
    case SyntacticClass::kSingleEquation: return "SINGLE_EQUATION";
    case SyntacticClass::kConjunctive: return "CONJUNCTIVE";
    case SyntacticClass::kPositiveExistential: return "POSITIVE_EXISTENTIAL";
    case SyntacticClass::kExistential: return "EXISTENTIAL";
  }
  return "?";
}

inline bool class_le(SyntacticClass a, SyntacticClass b) {
  return static_cast<int>(a) <= static_cast<int>(b);
}

struct Formula {
  std::vector<std::string> params;
  std::vector<std::string> bound;
  Body body;

  static Formula parse(std::string_view text);

  /// Checks the structural invariants, throwing std::invalid_argument.
  void validate() const {
    std::set<std::string> seen;
    for (const auto& v : params) {
      if (!seen.insert(v).second) throw std::invalid_argument("duplicate parameter '" + v + "'");
    }
    for (const auto& v : bound) {
      if (!seen.insert(v).second) {
        throw std::invalid_argument("bound variable '" + v + "' repeats or shadows a parameter");
      }
    }
    for (const auto& v : body_variables()) {
      if (!seen.count(v)) throw UnboundVariableError(v);
    }
  }

  std::set<std::string> body_variables() const {
    std::set<std::string> out;
    body.for_each_atom([&](const Atom& a) {
      for (auto& v : a.lhs.variables()) out.insert(v);
    });
    return out;
  }

  /// Parameters, bound variables and body variables.
  std::set<std::string> variables() const {
    auto out = body_variables();
    out.insert(params.begin(), params.end());
    out.insert(bound.begin(), bound.end());
    return out;
  }

  std::size_t atom_count() const {
    std::size_t n = 0;
    body.for_each_atom([&](const Atom&) { ++n; });
    return n;
  }

  unsigned max_degree() const {
    unsigned d = 0;
    body.for_each_atom([&](const Atom& a) { d = std::max(d, a.lhs.degree()); });
    return d;
  }

  std::string to_string() const;

  friend bool operator==(const Formula&, const Formula&) = default;
};

inline SyntacticClass classify(const Formula& f) {
  bool has_neq = false;
  f.body.for_each_atom([&](const Atom& a) { has_neq |= a.rel == Relation::kNeq; });
  if (has_neq) return SyntacticClass::kExistential;
  if (f.body.is_atom()) return SyntacticClass::kSingleEquation;
  if (f.body.kind() == Body::Kind::kAnd) {
    bool flat = std::all_of(f.body.children().begin(), f.body.children().end(),
                            [](const Body& c) { return c.is_atom(); });
    if (flat) return SyntacticClass::kConjunctive;
  }
  return SyntacticClass::kPositiveExistential;
}

/// Atoms of a conjunctive body in order (a single atom counts as a
/// one-element conjunction).
inline std::vector<Polynomial> conjunct_polynomials(const Body& body) {
  std::vector<Polynomial> out;
  if (body.is_atom()) {
    out.push_back(body.atom().lhs);
    return out;
  }
  if (body.kind() != Body::Kind::kAnd) throw std::invalid_argument("body is not a conjunction");
  for (const auto& c : body.children()) {
    if (!c.is_atom() || c.atom().rel != Relation::kEq) {
      throw std::invalid_argument("body is not a conjunction of equations");
    }
    out.push_back(c.atom().lhs);
  }
  return out;
}

/// Source of compiler-generated names with the reserved '_' prefix,
/// avoiding every name it has been told about or has produced.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> used) : used_(std::move(used)) {}

  void reserve(const std::string& name) { used_.insert(name); }
  void reserve_all(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }

  std::string next(std::string_view hint = "v") {
    for (;;) {
      std::string name = "_" + std::string(hint) + std::to_string(++counter_);
      if (used_.insert(name).second) return name;
    }
  }

 private:
  std::set<std::string> used_;
  std::uint64_t counter_ = 0;
};

inline std::vector<std::string> fresh_variables(const Formula& f, std::size_t count) {
  FreshNames names(f.variables());
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(names.next("v"));
  return out;
}

inline Body rename(const Body& b, const std::map<std::string, std::string>& names) {
  if (b.is_atom()) return Body(Atom{rename(b.atom().lhs, names), b.atom().rel});
  std::vector<Body> kids;
  for (const auto& c : b.children()) kids.push_back(rename(c, names));
  return b.kind() == Body::Kind::kAnd ? Body::conj(std::move(kids)) : Body::disj(std::move(kids));
}

inline Body substitute(const Body& b, const std::map<std::string, Polynomial>& bindings) {
  if (b.is_atom()) return Body(Atom{substitute(b.atom().lhs, bindings), b.atom().rel});
  std::vector<Body> kids;
  for (const auto& c : b.children()) kids.push_back(substitute(c, bindings));
  return b.kind() == Body::Kind::kAnd ? Body::conj(std::move(kids)) : Body::disj(std::move(kids));
}

inline std::string to_string(const Body& b, bool inside_and = false) {
  if (b.is_atom()) {
    return b.atom().lhs.to_string() + (b.atom().rel == Relation::kEq ? " = 0" : " != 0");
  }
  bool is_and = b.kind() == Body::Kind::kAnd;
  std::string s;
  for (std::size_t i = 0; i < b.children().size(); ++i) {
    if (i > 0) s += is_and ? " & " : " | ";
    s += to_string(b.children()[i], is_and);
  }
  if (!is_and && inside_and) return "(" + s + ")";
  return s;
}

inline std::string Formula::to_string() const {
  std::string s = "params";
  for (const auto& p : params) s += " " + p;
  s += " .";
  if (!bound.empty()) {
    s += " exists";
    for (const auto& v : bound) s += " " + v;
    s += " .";
  }
  return s + " " + dioph::to_string(body);
}

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse() {
    Formula f;
    expect_keyword("params");
    f.params = ident_list(false);
    if (peek().kind == TokenKind::kIdent && peek().text == "exists") {
      next();
      f.bound = ident_list(true);
    }
    for (const auto& v : f.params) declared_.insert(v);
    for (const auto& v : f.bound) {
      if (std::find(f.params.begin(), f.params.end(), v) != f.params.end()) {
        throw ParseError(decl_pos_.at(v), "bound variable '" + v + "' shadows a parameter");
      }
      declared_.insert(v);
    }
    f.body = parse_or(false);
    if (peek().kind != TokenKind::kEnd) {
      throw ParseError(peek().pos, std::string("unexpected ") + token_name(peek().kind));
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  void expect(TokenKind k) {
    if (peek().kind != k) {
      throw ParseError(peek().pos, std::string("expected ") + token_name(k) + " but found " + token_name(peek().kind));
    }
    next();
  }

  void expect_keyword(const char* kw) {
    if (peek().kind != TokenKind::kIdent || peek().text != kw) {
      throw ParseError(peek().pos, std::string("expected '") + kw + "'");
    }
    next();
  }

  std::vector<std::string> ident_list(bool nonempty) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    while (peek().kind == TokenKind::kIdent) {
      const Token& t = next();
      if (t.text == "params" || t.text == "exists") throw ParseError(t.pos, "'" + t.text + "' is a keyword");
      if (!seen.insert(t.text).second) throw ParseError(t.pos, "duplicate variable '" + t.text + "'");
      decl_pos_[t.text] = t.pos;
      out.push_back(t.text);
    }
    if (nonempty && out.empty()) throw ParseError(peek().pos, "'exists' needs at least one variable");
    expect(TokenKind::kDot);
    return out;
  }

  // `negated` carries the parity of enclosing '!' so negations land on atoms.
  Body parse_or(bool negated) {
    std::vector<Body> parts{parse_and(negated)};
    while (peek().kind == TokenKind::kPipe) {
      next();
      parts.push_back(parse_and(negated));
    }
    if (parts.size() == 1) return std::move(parts.front());
    return negated ? Body::conj(std::move(parts)) : Body::disj(std::move(parts));
  }

  Body parse_and(bool negated) {
    std::vector<Body> parts{parse_unit(negated)};
    while (peek().kind == TokenKind::kAmp) {
      next();
      parts.push_back(parse_unit(negated));
    }
    if (parts.size() == 1) return std::move(parts.front());
    return negated ? Body::disj(std::move(parts)) : Body::conj(std::move(parts));
  }

  Body parse_unit(bool negated) {
    if (peek().kind == TokenKind::kBang) {
      next();
      return parse_unit(!negated);
    }
    if (peek().kind != TokenKind::kLParen) return parse_atom(negated);
    // '(' opens either a parenthesised polynomial or a sub-body.
    std::size_t save = i_;
    try {
      return parse_atom(negated);
    } catch (const ParseError& as_atom) {
      i_ = save;
      next();
      try {
        Body inner = parse_or(negated);
        expect(TokenKind::kRParen);
        return inner;
      } catch (const ParseError& as_body) {
        if (as_atom.position() > as_body.position()) throw as_atom;
        throw;
      }
    }
  }

  Body parse_atom(bool negated) {
    std::size_t start = peek().pos;
    Polynomial lhs, rhs;
    bool is_eq = false;
    try {
      lhs = detail::PolyParser(toks_, i_).parse_sum();
      const Token& rel = next();
      if (rel.kind != TokenKind::kEq && rel.kind != TokenKind::kNeq) {
        throw ParseError(rel.pos, std::string("expected '=' or '!=' but found ") + token_name(rel.kind));
      }
      is_eq = rel.kind == TokenKind::kEq;
      rhs = detail::PolyParser(toks_, i_).parse_sum();
    } catch (const std::overflow_error&) {
      throw ParseError(start, "coefficient overflow");
    }
    Polynomial p = lhs - rhs;
    // Checked on both sides so that variables cancelling in lhs - rhs still
    // have to be declared.
    for (const auto& v : lhs.variables()) {
      if (!declared_.count(v)) throw ParseError(start, "variable '" + v + "' is neither a parameter nor bound");
    }
    for (const auto& v : rhs.variables()) {
      if (!declared_.count(v)) throw ParseError(start, "variable '" + v + "' is neither a parameter nor bound");
    }
    return (is_eq != negated) ? Body::eq(std::move(p)) : Body::neq(std::move(p));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::set<std::string> declared_;
  std::map<std::string, std::size_t> decl_pos_;
};

}  // namespace detail

inline Formula Formula::parse(std::string_view text) { return detail::FormulaParser(text).parse(); }

}  // namespace dioph

#endif  // DIOPH_FORMULA_HPP_
