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

// Sparse multivariate polynomials over Z in named variables.
//
// Coefficients are exact int64 (overflow throws). A polynomial is read in a
// ring R through the canonical map Z -> R, so the same object is meaningful
// over every backend.

#ifndef DIOPH_POLY_HPP_
#define DIOPH_POLY_HPP_

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
#include "dioph/numeric.hpp"
#include "dioph/ring.hpp"

namespace dioph {

class UnboundVariableError : public std::invalid_argument {
 public:
  explicit UnboundVariableError(const std::string& var)
      : std::invalid_argument("unbound variable '" + var + "'"), var_(var) {}
  const std::string& variable() const { return var_; }

 private:
  std::string var_;
};

/// Power product of named variables. Factors are sorted by name and every
/// stored exponent is positive.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;

  explicit Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    for (auto& f : factors) {
      if (f.second == 0) continue;
      if (!factors_.empty() && factors_.back().first == f.first) {
        factors_.back().second += f.second;
      } else {
        factors_.push_back(std::move(f));
      }
    }
  }

  static Monomial variable(std::string name, unsigned exponent = 1) {
    return Monomial({{std::move(name), exponent}});
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  unsigned exponent(std::string_view var) const {
    for (const auto& f : factors_) {
      if (f.first == var) return f.second;
    }
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->first < j->first) {
        out.factors_.push_back(*i++);
      } else if (j->first < i->first) {
        out.factors_.push_back(*j++);
      } else {
        out.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    out.factors_.insert(out.factors_.end(), i, a.factors_.end());
    out.factors_.insert(out.factors_.end(), j, b.factors_.end());
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic order, highest degree first; x*y precedes y^2.
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() && j < fb.size()) {
      if (fa[i].first != fb[j].first) return fa[i].first < fb[j].first;
      if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second;
      ++i;
      ++j;
    }
    return i < fa.size() && j == fb.size();
  }
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, std::int64_t, GradedOrder>;

  Polynomial() = default;

  static Polynomial constant(std::int64_t c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(Monomial(), c);
    return p;
  }

  static Polynomial variable(std::string name) {
    Polynomial p;
    p.terms_.emplace(Monomial::variable(std::move(name)), 1);
    return p;
  }

  static Polynomial term(std::int64_t c, Monomial m) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
  }

  /// Parses integer/identifier arithmetic with + - * ^ and parentheses.
  static Polynomial parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
  }

  std::int64_t constant_term() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? 0 : it->second;
  }

  /// Total degree; 0 for the zero polynomial.
  unsigned degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

  unsigned degree_in(std::string_view var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
  }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_) {
      for (const auto& f : m.factors()) out.insert(f.first);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& q) {
    for (const auto& [m, c] : q.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& q) {
    for (const auto& [m, c] : q.terms_) add_term(m, checked_neg(c));
    return *this;
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }

  friend Polynomial operator-(const Polynomial& p) {
    Polynomial out;
    for (const auto& [m, c] : p.terms_) out.terms_.emplace_hint(out.terms_.end(), m, checked_neg(c));
    return out;
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    Polynomial out;
    for (const auto& [mp, cp] : p.terms_) {
      for (const auto& [mq, cq] : q.terms_) out.add_term(mp * mq, checked_mul(cp, cq));
    }
    return out;
  }

  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  Polynomial pow(unsigned e) const {
    Polynomial acc = constant(1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1U) acc *= base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return acc;
  }

  /// Canonical text, graded-lex order, e.g. "x^2 + 3*x*y - 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      bool negative = c < 0;
      auto mag = negative ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(c)
                          : static_cast<std::uint64_t>(c);
      if (first) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (const auto& f : m.factors()) {
        if (!mono.empty()) mono += "*";
        mono += f.first;
        if (f.second > 1) mono += "^" + std::to_string(f.second);
      }
      if (mono.empty()) {
        s += std::to_string(mag);
      } else if (mag == 1) {
        s += mono;
      } else {
        s += std::to_string(mag) + "*" + mono;
      }
    }
    return s;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Monomial& m, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

inline Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
inline Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

/// Simultaneous substitution; variables without a binding stay fixed.
inline Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
  std::map<std::string, std::vector<Polynomial>> powers;
  auto power_of = [&](const std::string& var, unsigned e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) {
      cache.push_back(Polynomial::constant(1));
      cache.push_back(bindings.at(var));
    }
    while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
    return cache[e];
  };
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [var, e] : m.factors()) {
      if (bindings.count(var)) {
        term *= power_of(var, e);
      } else {
        kept.emplace_back(var, e);
      }
    }
    if (!kept.empty()) term *= Polynomial::term(1, Monomial(std::move(kept)));
    out += term;
  }
  return out;
}

inline Polynomial rename(const Polynomial& p, const std::map<std::string, std::string>& names) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [var, e] : m.factors()) {
      auto it = names.find(var);
      fs.emplace_back(it == names.end() ? var : it->second, e);
    }
    out += Polynomial::term(c, Monomial(std::move(fs)));
  }
  return out;
}

/// Value of p at `point`, coefficients sent through Z -> R.
inline Element evaluate(const Polynomial& p, const std::map<std::string, Element>& point, const Ring& ring) {
  Element acc = ring.zero();
  for (const auto& [m, c] : p.terms()) {
    Element t = ring.canonical(c);
    for (const auto& [var, e] : m.factors()) {
      auto it = point.find(var);
      if (it == point.end()) throw UnboundVariableError(var);
      t = ring.mul(t, ring.pow(it->second, e));
    }
    acc = ring.add(acc, t);
  }
  return acc;
}

namespace detail {

// Recursive-descent polynomial parser over a shared token stream; the
// formula parser drives it for atom sides.
class PolyParser {
 public:
  PolyParser(const std::vector<Token>& tokens, std::size_t& index) : toks_(tokens), i_(index) {}

  Polynomial parse_sum() {
    Polynomial acc = parse_product();
    while (peek().kind == TokenKind::kPlus || peek().kind == TokenKind::kMinus) {
      bool minus = next().kind == TokenKind::kMinus;
      Polynomial rhs = parse_product();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  Polynomial parse_product() {
    Polynomial acc = parse_unary();
    while (peek().kind == TokenKind::kStar) {
      next();
      acc *= parse_unary();
    }
    return acc;
  }

  Polynomial parse_unary() {
    if (peek().kind == TokenKind::kMinus) {
      next();
      return -parse_unary();
    }
    return parse_power();
  }

  Polynomial parse_power() {
    Polynomial base = parse_primary();
    if (peek().kind == TokenKind::kCaret) {
      next();
      const Token& t = next();
      if (t.kind != TokenKind::kInteger || t.value < 1) {
        throw ParseError(t.pos, "exponent must be a positive integer literal");
      }
      if (t.value > 4096) throw ParseError(t.pos, "exponent too large");
      return base.pow(static_cast<unsigned>(t.value));
    }
    return base;
  }

  Polynomial parse_primary() {
    const Token& t = next();
    switch (t.kind) {
      case TokenKind::kInteger:
        return Polynomial::constant(t.value);
      case TokenKind::kIdent:
        if (t.text == "params" || t.text == "exists") {
          throw ParseError(t.pos, "'" + t.text + "' is a keyword");
        }
        return Polynomial::variable(t.text);
      case TokenKind::kLParen: {
        Polynomial inner = parse_sum();
        const Token& close = next();
        if (close.kind != TokenKind::kRParen) {
          throw ParseError(close.pos, std::string("expected ')' but found ") + token_name(close.kind));
        }
        return inner;
      }
      default:
        throw ParseError(t.pos, std::string("expected a polynomial term but found ") + token_name(t.kind));
    }
  }

  const std::vector<Token>& toks_;
  std::size_t& i_;
};

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text) {
  auto toks = tokenize(text);
  std::size_t i = 0;
  try {
    Polynomial p = detail::PolyParser(toks, i).parse_sum();
    if (toks[i].kind != TokenKind::kEnd) {
      throw ParseError(toks[i].pos, std::string("unexpected ") + token_name(toks[i].kind));
    }
    return p;
  } catch (const std::overflow_error&) {
    throw ParseError(toks[std::min(i, toks.size() - 1)].pos, "coefficient overflow");
  }
}

}  // namespace dioph

#endif  // DIOPH_POLY_HPP_
