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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "dioph/poly.hpp"
#include "dioph/ring.hpp"
#include "support/naive_oracle.hpp"

namespace dioph {
namespace {

Polynomial P(const char* s) { return Polynomial::parse(s); }

// Integer value of p at an integer point, by plain arithmetic.
long long int_eval(const Polynomial& p, const std::map<std::string, long long>& at) {
  long long acc = 0;
  for (const auto& [m, c] : p.terms()) {
    long long v = c;
    for (const auto& [var, e] : m.factors()) {
      for (unsigned k = 0; k < e; ++k) v *= at.at(var);
    }
    acc += v;
  }
  return acc;
}

Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, unsigned max_degree) {
  Polynomial p;
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    std::vector<Monomial::Factor> fs;
    unsigned left = static_cast<unsigned>(rng() % (max_degree + 1));
    for (const auto& v : vars) {
      if (left == 0) break;
      unsigned e = static_cast<unsigned>(rng() % (left + 1));
      if (e > 0) fs.emplace_back(v, e);
      left -= e;
    }
    p += Polynomial::term(static_cast<std::int64_t>(rng() % 11) - 5, Monomial(fs));
  }
  return p;
}

TEST(Polynomial, AddCollectsLikeTerms) {
  EXPECT_TRUE(add(P("x"), P("-x")).is_zero());
  EXPECT_TRUE(add(P("x"), P("-x")).terms().empty());
  EXPECT_EQ(add(P("x^2 + 1"), P("x^2 - 1")), P("2*x^2"));
  Polynomial s = add(P("x*y + 3"), P("2*x*y"));
  EXPECT_EQ(s, P("3*x*y + 3"));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    std::map<std::string, long long> at{{"x", static_cast<long long>(rng() % 201) - 100},
                                        {"y", static_cast<long long>(rng() % 201) - 100}};
    EXPECT_EQ(int_eval(s, at), int_eval(P("x*y + 3"), at) + int_eval(P("2*x*y"), at));
  }
}

TEST(Polynomial, MulExpands) {
  EXPECT_TRUE(mul(P("x + y"), Polynomial()).is_zero());
  EXPECT_EQ(mul(P("x + y"), P("x - y")), P("x^2 - y^2"));
  Polynomial prod = mul(P("2*x - 1"), P("3*y - 1"));
  EXPECT_EQ(prod, P("6*x*y - 2*x - 3*y + 1"));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    std::map<std::string, long long> at{{"x", static_cast<long long>(rng() % 2001) - 1000},
                                        {"y", static_cast<long long>(rng() % 2001) - 1000}};
    EXPECT_EQ(int_eval(prod, at), int_eval(P("2*x - 1"), at) * int_eval(P("3*y - 1"), at));
  }
}

TEST(Polynomial, DegreeIsAdditiveUnderMultiplication) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Polynomial p = random_poly(rng, {"x", "y", "z"}, 3), q = random_poly(rng, {"x", "y"}, 3);
    if (p.is_zero() || q.is_zero()) continue;
    EXPECT_EQ((p * q).degree(), p.degree() + q.degree());
  }
}

TEST(Polynomial, SubstituteExpandsSimultaneously) {
  Polynomial g = P("x^2 + y^2");
  Polynomial s = substitute(g, {{"x", P("t")}, {"y", P("t - 1")}});
  EXPECT_EQ(s, P("2*t^2 - 2*t + 1"));
  EXPECT_EQ(int_eval(s, {{"t", 0}}), 1);
  EXPECT_EQ(int_eval(s, {{"t", 1}}), 1);
  EXPECT_EQ(int_eval(s, {{"t", 2}}), 5);
  EXPECT_EQ(substitute(P("x*y"), {{"x", P("x")}, {"y", P("y")}}), P("x*y"));
  EXPECT_TRUE(substitute(g, {{"x", Polynomial()}, {"y", Polynomial()}}).is_zero());
  // Simultaneous, not sequential: swapping x and y.
  EXPECT_EQ(substitute(P("x - 2*y"), {{"x", P("y")}, {"y", P("x")}}), P("y - 2*x"));
  // Unbound variables stay fixed.
  EXPECT_EQ(substitute(P("x*z"), {{"x", P("y + 1")}}), P("y*z + z"));
}

TEST(Polynomial, EvaluateUsesCanonicalImage) {
  Ring r5 = Ring::zmod(5), r3 = Ring::zmod(3), r6 = Ring::zmod(6);
  Polynomial g = P("x^2 + y^2");
  EXPECT_EQ(evaluate(g, {{"x", Element{2}}, {"y", Element{1}}}, r5).code, 0);
  EXPECT_EQ(evaluate(g, {{"x", Element{0}}, {"y", Element{0}}}, r3).code, 0);
  Polynomial h = P("x^2 + 3*x*y + y^2");
  EXPECT_EQ(evaluate(h, {{"x", Element{3}}, {"y", Element{2}}}, r6).code, (9 + 18 + 4) % 6);
  EXPECT_EQ(evaluate(P("-7"), {}, r5).code, 3);
  EXPECT_THROW(evaluate(g, {{"x", Element{1}}}, r5), UnboundVariableError);
  try {
    evaluate(g, {{"x", Element{1}}}, r5);
  } catch (const UnboundVariableError& e) {
    EXPECT_EQ(e.variable(), "y");
  }
}

TEST(Polynomial, EvaluationIsARingHomomorphism) {
  std::mt19937_64 rng(2026);
  for (std::int64_t n = 1; n <= 8; ++n) {
    Ring r = Ring::zmod(n);
    for (int trial = 0; trial < 6; ++trial) {
      Polynomial p = random_poly(rng, {"x", "y"}, 3), q = random_poly(rng, {"x", "y"}, 3);
      for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
          std::map<std::string, Element> v{{"x", Element{a}}, {"y", Element{b}}};
          std::map<std::string, long long> w{{"x", a}, {"y", b}};
          EXPECT_EQ(evaluate(p + q, v, r), r.add(evaluate(p, v, r), evaluate(q, v, r)));
          EXPECT_EQ(evaluate(p * q, v, r), r.mul(evaluate(p, v, r), evaluate(q, v, r)));
          EXPECT_EQ(evaluate(p, v, r).code, naive::eval(p, w, n));
        }
      }
    }
  }
}

TEST(Polynomial, SubstitutionSemantics) {
  std::mt19937_64 rng(99);
  for (std::int64_t n = 1; n <= 6; ++n) {
    Ring r = Ring::zmod(n);
    for (int trial = 0; trial < 5; ++trial) {
      Polynomial p = random_poly(rng, {"x", "y"}, 2);
      std::map<std::string, Polynomial> b{{"x", random_poly(rng, {"s", "t"}, 2)},
                                          {"y", random_poly(rng, {"s", "t"}, 2)}};
      Polynomial sp = substitute(p, b);
      for (std::int64_t s = 0; s < n; ++s) {
        for (std::int64_t t = 0; t < n; ++t) {
          std::map<std::string, Element> v{{"s", Element{s}}, {"t", Element{t}}};
          std::map<std::string, Element> inner{{"x", evaluate(b["x"], v, r)}, {"y", evaluate(b["y"], v, r)}};
          EXPECT_EQ(evaluate(sp, v, r), evaluate(p, inner, r));
        }
      }
    }
  }
}

TEST(Polynomial, CanonicalFormIsIdempotent) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Polynomial p = random_poly(rng, {"x", "y", "z"}, 3) * random_poly(rng, {"x", "y"}, 2);
    Polynomial rebuilt;
    for (const auto& [m, c] : p.terms()) {
      EXPECT_NE(c, 0);
      for (const auto& [var, e] : m.factors()) EXPECT_GT(e, 0u) << var;
      rebuilt += Polynomial::term(c, m);
    }
    EXPECT_EQ(rebuilt, p);
    EXPECT_EQ(Polynomial::parse(p.to_string()), p);
  }
}

TEST(Polynomial, PrintsInGradedOrder) {
  EXPECT_EQ(P("3*y*x - 1 + x^2").to_string(), "x^2 + 3*x*y - 1");
  EXPECT_EQ(P("-x").to_string(), "-x");
  EXPECT_EQ(Polynomial().to_string(), "0");
  EXPECT_EQ(P("y^3 + x*y + x^3").to_string(), "x^3 + y^3 + x*y");
  EXPECT_EQ(P("(x + 1)^2").to_string(), "x^2 + 2*x + 1");
}

TEST(Polynomial, VariablesAndDegrees) {
  Polynomial p = P("x^2*y + y^3 - z");
  EXPECT_EQ(p.variables(), (std::set<std::string>{"x", "y", "z"}));
  EXPECT_EQ(p.degree(), 3u);
  EXPECT_EQ(p.degree_in("x"), 2u);
  EXPECT_EQ(p.degree_in("w"), 0u);
  EXPECT_TRUE(P("7").is_constant());
  EXPECT_EQ(P("7").constant_term(), 7);
  EXPECT_EQ(rename(p, {{"x", "a"}}), P("a^2*y + y^3 - z"));
}

TEST(Polynomial, ParseRejectsMalformedInput) {
  EXPECT_THROW(P("x^0"), ParseError);
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("x^-1"), ParseError);
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("(x"), ParseError);
  EXPECT_THROW(P("x y"), ParseError);
  EXPECT_THROW(P("exists"), ParseError);
  EXPECT_THROW(P("99999999999999999999"), ParseError);
  EXPECT_THROW(P("x $ y"), ParseError);
}

TEST(Polynomial, CoefficientOverflowIsReported) {
  Polynomial big = Polynomial::constant(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + Polynomial::constant(1), std::overflow_error);
  EXPECT_THROW(big * Polynomial::constant(2), std::overflow_error);
}

}  // namespace
}  // namespace dioph
