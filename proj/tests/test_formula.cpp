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

#include <set>
#include <string>

#include "dioph/corpus.hpp"
#include "dioph/formula.hpp"

namespace dioph {
namespace {

Formula F(const char* s) { return Formula::parse(s); }
Polynomial P(const char* s) { return Polynomial::parse(s); }

TEST(Formula, EquationsAreStoredAsDifferences) {
  Formula f = F("params t . exists x . x^2 = t");
  ASSERT_TRUE(f.body.is_atom());
  EXPECT_EQ(f.body.atom().lhs, P("x^2 - t"));
  EXPECT_EQ(f.body.atom().rel, Relation::kEq);
  EXPECT_EQ(f.params, (std::vector<std::string>{"t"}));
  EXPECT_EQ(f.bound, (std::vector<std::string>{"x"}));
  Formula g = F("params a b . a*b != a + 1");
  EXPECT_EQ(g.body.atom().lhs, P("a*b - a - 1"));
  EXPECT_EQ(g.body.atom().rel, Relation::kNeq);
}

TEST(Formula, NegationIsPushedToAtoms) {
  Formula f = F("params t s . !(t = 0 & s = 0)");
  EXPECT_EQ(f.body, Body::disj({Body::neq(P("t")), Body::neq(P("s"))}));
  Formula g = F("params t s . !(t = 0 | s != 1)");
  EXPECT_EQ(g.body, Body::conj({Body::neq(P("t")), Body::eq(P("s - 1"))}));
  EXPECT_EQ(F("params t . !!(t = 0)").body, Body::eq(P("t")));
  EXPECT_EQ(F("params t . !(t != 0)").body, Body::eq(P("t")));
}

TEST(Formula, JunctionsFlatten) {
  Formula f = F("params a b c . (a = 0 & b = 0) & c = 0");
  ASSERT_EQ(f.body.kind(), Body::Kind::kAnd);
  EXPECT_EQ(f.body.children().size(), 3u);
  Formula g = F("params a b c . a = 0 | (b = 0 | c = 0)");
  ASSERT_EQ(g.body.kind(), Body::Kind::kOr);
  EXPECT_EQ(g.body.children().size(), 3u);
  Formula h = F("params a b c . (a = 0 | b = 0) & c = 0");
  EXPECT_EQ(h.body.children().size(), 2u);
  EXPECT_EQ(h.body.children()[0].kind(), Body::Kind::kOr);
  EXPECT_EQ(F("params a . ((a) = 0)").body, Body::eq(P("a")));
}

TEST(Formula, Classify) {
  EXPECT_EQ(classify(F("params t . exists x . x^2 - t = 0")), SyntacticClass::kSingleEquation);
  EXPECT_EQ(classify(F("params t . 0 = 0")), SyntacticClass::kSingleEquation);
  EXPECT_EQ(classify(F("params t s . t = 0 & s = 0")), SyntacticClass::kConjunctive);
  EXPECT_EQ(classify(F("params t s . t = 0 | s = 0")), SyntacticClass::kPositiveExistential);
  EXPECT_EQ(classify(F("params t s . (t = 0 | s = 0) & t - 1 = 0")), SyntacticClass::kPositiveExistential);
  EXPECT_EQ(classify(F("params t . t != 0")), SyntacticClass::kExistential);
  EXPECT_EQ(classify(F("params t s . t = 0 | s != 0")), SyntacticClass::kExistential);
}

TEST(Formula, ClassesFormAChain) {
  const SyntacticClass all[] = {SyntacticClass::kSingleEquation, SyntacticClass::kConjunctive,
                                SyntacticClass::kPositiveExistential, SyntacticClass::kExistential};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(class_le(all[i], all[j]), i <= j) << i << " " << j;
  }
  EXPECT_STREQ(class_name(SyntacticClass::kConjunctive), "CONJUNCTIVE");
  EXPECT_STREQ(class_name(SyntacticClass::kPositiveExistential), "POSITIVE_EXISTENTIAL");
}

TEST(Formula, ParseErrors) {
  EXPECT_THROW(F("t = 0"), ParseError);
  EXPECT_THROW(F("params t . x = 0"), ParseError);
  EXPECT_THROW(F("params t t . t = 0"), ParseError);
  EXPECT_THROW(F("params t . exists t . t = 0"), ParseError);
  EXPECT_THROW(F("params t . exists . t = 0"), ParseError);
  EXPECT_THROW(F("params t . t"), ParseError);
  EXPECT_THROW(F("params t . t = 0 &"), ParseError);
  EXPECT_THROW(F("params t . (t = 0"), ParseError);
  EXPECT_THROW(F("params t . t = 0 extra"), ParseError);
  EXPECT_THROW(F("params t . t^0 = 0"), ParseError);
  // A variable that cancels in lhs - rhs must still be declared.
  EXPECT_THROW(F("params t . t + x = x"), ParseError);
  try {
    F("params t . t = 0 & q = 1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 19u);
  }
}

TEST(Formula, ValidateReportsStructuralErrors) {
  Formula f;
  f.params = {"t", "t"};
  EXPECT_THROW(f.validate(), std::invalid_argument);
  f.params = {"t"};
  f.bound = {"t"};
  EXPECT_THROW(f.validate(), std::invalid_argument);
  f.bound = {"x"};
  f.body = Body::eq(P("t*y"));
  EXPECT_THROW(f.validate(), UnboundVariableError);
  f.body = Body::eq(P("t*x"));
  EXPECT_NO_THROW(f.validate());
}

TEST(Formula, PrintParseRoundTripOverCorpus) {
  for (const auto& f : fixed_corpus()) {
    Formula g = Formula::parse(f.to_string());
    EXPECT_EQ(g, f) << f.to_string();
    EXPECT_EQ(g.to_string(), f.to_string());
  }
  for (const auto& f : random_corpus(17, {.count = 200})) {
    EXPECT_NO_THROW(f.validate());
    EXPECT_EQ(Formula::parse(f.to_string()), f) << f.to_string();
  }
}

TEST(Formula, PrintsDisjunctionsInsideConjunctionsWithParens) {
  Formula f = F("params t s . (t = 0 | s = 0) & t + s - 1 = 0");
  EXPECT_EQ(f.to_string(), "params t s . (t = 0 | s = 0) & s + t - 1 = 0");
  EXPECT_EQ(F("params . exists x . x^2 + 1 = 0").to_string(), "params . exists x . x^2 + 1 = 0");
}

TEST(Formula, JunctionEdgeCases) {
  EXPECT_THROW(Body::disj({}), std::invalid_argument);
  EXPECT_EQ(Body::conj({}), Body::truth());
  EXPECT_EQ(Body::conj({Body::eq(P("x"))}), Body::eq(P("x")));
  EXPECT_EQ(Body::disj({Body::eq(P("x"))}), Body::eq(P("x")));
  EXPECT_THROW(Body::conj({Body::eq(P("x")), Body::eq(P("y"))}).atom(), std::logic_error);
}

TEST(Formula, ConjunctPolynomials) {
  auto ps = conjunct_polynomials(F("params t s . t = 0 & s - 1 = 0").body);
  EXPECT_EQ(ps, (std::vector<Polynomial>{P("t"), P("s - 1")}));
  EXPECT_EQ(conjunct_polynomials(Body::eq(P("t"))).size(), 1u);
  EXPECT_THROW(conjunct_polynomials(F("params t s . t = 0 | s = 0").body), std::invalid_argument);
  EXPECT_THROW(conjunct_polynomials(F("params t s . t = 0 & s != 0").body), std::invalid_argument);
}

TEST(Formula, FreshNamesAvoidEverythingSeen) {
  Formula f = F("params _v1 t . exists _v2 . _v1 - _v2 + t = 0");
  auto fresh = fresh_variables(f, 3);
  std::set<std::string> distinct(fresh.begin(), fresh.end());
  EXPECT_EQ(distinct.size(), 3u);
  for (const auto& v : fresh) {
    EXPECT_EQ(v[0], '_');
    EXPECT_EQ(f.variables().count(v), 0u) << v;
  }
  FreshNames names;
  names.reserve("_z1");
  EXPECT_EQ(names.next("z"), "_z2");
  EXPECT_EQ(names.next("w"), "_w3");
}

TEST(Formula, AtomCountAndDegree) {
  Formula f = F("params t s . exists x . (t - x = 0 | s - x = 0) & x^2 - x = 0");
  EXPECT_EQ(f.atom_count(), 3u);
  EXPECT_EQ(f.max_degree(), 2u);
  EXPECT_EQ(f.body_variables(), (std::set<std::string>{"s", "t", "x"}));
}

TEST(Formula, RenameAndSubstituteBodies) {
  Body b = F("params t s . t = 0 | s != 0").body;
  EXPECT_EQ(rename(b, {{"t", "u"}}), F("params u s . u = 0 | s != 0").body);
  EXPECT_EQ(substitute(b, {{"s", P("t + 1")}}), F("params t . t = 0 | t + 1 != 0").body);
}

}  // namespace
}  // namespace dioph
