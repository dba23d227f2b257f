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

// Lowering passes:
//
//   eliminate_inequalities   EXISTENTIAL          -> POSITIVE_EXISTENTIAL
//   eliminate_disjunctions   POSITIVE_EXISTENTIAL -> CONJUNCTIVE
//   fold_to_single           CONJUNCTIVE          -> SINGLE_EQUATION
//
// The first two name each rewritten subterm with a fresh variable z and
// add the definition p - z = 0 at the top level of the body. All fresh
// bound variables are appended to the quantifier prefix in creation order.

#ifndef DIOPH_PASSES_HPP_
#define DIOPH_PASSES_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dioph/formula.hpp"
#include "dioph/numeric.hpp"
#include "dioph/gadgets.hpp"
#include "dioph/poly.hpp"
#include "dioph/ring.hpp"

namespace dioph {

struct PassOptions {
  bool allow_unverified = false;
};

class MissingGadgetError : public std::runtime_error {
 public:
  struct Item {
    std::string pass;
    std::string kind;
    std::string reason;
  };

  explicit MissingGadgetError(std::vector<Item> items) : std::runtime_error(describe(items)), items_(std::move(items)) {}

  const std::vector<Item>& items() const { return items_; }

 private:
  static std::string describe(const std::vector<Item>& items) {
    std::string s = "missing gadget";
    for (const auto& it : items) s += "; " + it.pass + " needs " + it.kind + ": " + it.reason;
    return s;
  }

  std::vector<Item> items_;
};

struct PassTrace {
  std::string pass;
  SyntacticClass input_class = SyntacticClass::kExistential;
  SyntacticClass output_class = SyntacticClass::kExistential;
  SyntacticClass target = SyntacticClass::kExistential;
  std::size_t fresh_variables = 0;
  std::size_t atoms_before = 0;
  std::size_t atoms_after = 0;
  unsigned degree_before = 0;
  unsigned degree_after = 0;
  std::vector<std::string> gadgets;
};

namespace detail {

struct Rewriter {
  Formula input;
  FreshNames names;
  std::vector<std::string> added;
  std::vector<Body> defs;

  explicit Rewriter(const Formula& f) : input(f), names(f.variables()) {}

  std::string fresh(std::string_view hint) {
    added.push_back(names.next(hint));
    return added.back();
  }

  // Names p by a fresh variable and records the definition p - z = 0.
  std::string name_of(const Polynomial& p, std::string_view hint) {
    std::string z = fresh(hint);
    defs.push_back(Body::eq(p - Polynomial::variable(z)));
    return z;
  }

  // A copy of def's body with parameters mapped to `args` and every bound
  // variable renamed to a fresh one.
  Body instantiate(const Formula& def, const std::vector<std::string>& args) {
    std::map<std::string, std::string> to;
    for (std::size_t i = 0; i < def.params.size(); ++i) to.emplace(def.params[i], args[i]);
    for (const auto& b : def.bound) to.emplace(b, fresh(b.empty() || b[0] == '_' ? "x" : b));
    return rename(def.body, to);
  }

  Formula finish(Body body) const {
    Formula out;
    out.params = input.params;
    out.bound = input.bound;
    out.bound.insert(out.bound.end(), added.begin(), added.end());
    std::vector<Body> parts = defs;
    parts.push_back(std::move(body));
    out.body = Body::conj(std::move(parts));
    return out;
  }
};

inline PassTrace begin_trace(const char* name, const Formula& f, SyntacticClass target) {
  PassTrace t;
  t.pass = name;
  t.input_class = classify(f);
  t.target = target;
  t.atoms_before = f.atom_count();
  t.degree_before = f.max_degree();
  return t;
}

inline void end_trace(PassTrace& t, const Formula& in, const Formula& out) {
  t.output_class = classify(out);
  t.atoms_after = out.atom_count();
  t.degree_after = out.max_degree();
  t.fresh_variables = out.bound.size() - in.bound.size();
}

}  // namespace detail

/// Replaces each atom p != 0 by the nonzero gadget applied to a fresh z,
/// with p - z = 0 added at the top level. Identity on positive input.
inline Formula eliminate_inequalities(const Formula& f, const NonzeroGadget& nz, PassTrace* trace = nullptr) {
  if (nz.definition.params.size() != 1) throw std::invalid_argument("nonzero gadget needs one parameter");
  PassTrace t = detail::begin_trace("eliminate_inequalities", f, SyntacticClass::kPositiveExistential);
  Formula out = f;
  if (classify(f) == SyntacticClass::kExistential) {
    detail::Rewriter rw(f);
    rw.names.reserve_all(nz.definition.variables());
    auto walk = [&](auto&& self, const Body& b) -> Body {
      if (b.is_atom()) {
        if (b.atom().rel == Relation::kEq) return b;
        std::string z = rw.name_of(b.atom().lhs, "z");
        return rw.instantiate(nz.definition, {z});
      }
      std::vector<Body> kids;
      for (const auto& c : b.children()) kids.push_back(self(self, c));
      return b.kind() == Body::Kind::kAnd ? Body::conj(std::move(kids)) : Body::disj(std::move(kids));
    };
    Body body = walk(walk, f.body);
    out = rw.finish(std::move(body));
    t.gadgets.push_back("nonzero: " + nz.definition.to_string());
  }
  detail::end_trace(t, f, out);
  if (trace != nullptr) *trace = t;
  return out;
}

/// Removes every OR, innermost first; a k-ary OR is right-folded into
/// binary steps. An OR of conjunctions is distributed into binary ORs of
/// atoms, and each a = 0 | b = 0 becomes a - z = 0, b - w = 0 and a fresh
/// copy of axes(z, w).
inline Formula eliminate_disjunctions(const Formula& f, const AxesGadget& axes, PassTrace* trace = nullptr) {
  if (axes.definition.params.size() != 2) throw std::invalid_argument("axes gadget needs two parameters");
  if (classify(f) == SyntacticClass::kExistential) {
    throw std::invalid_argument("eliminate_disjunctions: input contains an inequation");
  }
  PassTrace t = detail::begin_trace("eliminate_disjunctions", f, SyntacticClass::kConjunctive);
  Formula out = f;
  bool has_or = false;
  auto scan = [&](auto&& self, const Body& b) -> void {
    if (b.is_atom()) return;
    if (b.kind() == Body::Kind::kOr) has_or = true;
    for (const auto& c : b.children()) self(self, c);
  };
  scan(scan, f.body);
  if (has_or) {
    detail::Rewriter rw(f);
    rw.names.reserve_all(axes.definition.variables());
    auto binary = [&](const Polynomial& a, const Polynomial& b, std::vector<Polynomial>& sink) {
      std::string z = rw.name_of(a, "z");
      std::string w = rw.name_of(b, "w");
      for (auto& p : conjunct_polynomials(rw.instantiate(axes.definition, {z, w}))) sink.push_back(std::move(p));
    };
    auto walk = [&](auto&& self, const Body& b) -> std::vector<Polynomial> {
      if (b.is_atom()) return {b.atom().lhs};
      std::vector<std::vector<Polynomial>> kids;
      for (const auto& c : b.children()) kids.push_back(self(self, c));
      std::vector<Polynomial> acc;
      if (b.kind() == Body::Kind::kAnd) {
        for (auto& k : kids) acc.insert(acc.end(), k.begin(), k.end());
        return acc;
      }
      acc = std::move(kids.back());
      for (std::size_t i = kids.size() - 1; i-- > 0;) {
        std::vector<Polynomial> next;
        for (const auto& a : kids[i]) {
          for (const auto& c : acc) binary(a, c, next);
        }
        acc = std::move(next);
      }
      return acc;
    };
    std::vector<Body> atoms;
    for (auto& p : walk(walk, f.body)) atoms.push_back(Body::eq(std::move(p)));
    out = rw.finish(Body::conj(std::move(atoms)));
    t.gadgets.push_back("axes: " + axes.definition.to_string());
  }
  detail::end_trace(t, f, out);
  if (trace != nullptr) *trace = t;
  return out;
}

/// g(f1, f2) with g's two variables replaced simultaneously.
inline Polynomial fold_polynomials(const OriginGadget& og, const Polynomial& f1, const Polynomial& f2) {
  return substitute(og.g, {{og.x, f1}, {og.y, f2}});
}

/// Coefficients of p reduced into [0, n); identity when n is 0.
inline Polynomial reduce_coefficients(const Polynomial& p, std::int64_t n) {
  if (n == 0) return p;
  Polynomial out;
  for (const auto& [mono, c] : p.terms()) out += Polynomial::term(mod_floor(c, n), mono);
  return out;
}

/// Left fold of the conjuncts through the origin gadget:
/// g(...g(g(f1, f2), f3)..., fr). Introduces no variables. With a nonzero
/// `modulus` every intermediate result has its coefficients reduced mod it,
/// which leaves the polynomial unchanged as a function on Z/modulus.
inline Formula fold_to_single(const Formula& f, const OriginGadget& og, std::int64_t modulus = 0,
                              PassTrace* trace = nullptr) {
  if (!class_le(classify(f), SyntacticClass::kConjunctive)) {
    throw std::invalid_argument("fold_to_single: input is not conjunctive");
  }
  PassTrace t = detail::begin_trace("fold_to_single", f, SyntacticClass::kSingleEquation);
  Formula out = f;
  if (!f.body.is_atom()) {
    auto polys = conjunct_polynomials(f.body);
    Polynomial h;
    if (!polys.empty()) {
      h = polys[0];
      for (std::size_t i = 1; i < polys.size(); ++i) {
        h = reduce_coefficients(fold_polynomials(og, h, polys[i]), modulus);
      }
    }
    out.body = Body::eq(std::move(h));
    t.gadgets.push_back("origin: " + og.g.to_string());
  }
  detail::end_trace(t, f, out);
  if (trace != nullptr) *trace = t;
  return out;
}

struct CompileStage {
  std::string name;  // "input" or the pass that produced it
  Formula formula;
};

struct CompileResult {
  Formula output;
  std::vector<CompileStage> stages;
  std::vector<PassTrace> traces;
};

namespace detail {

template <typename G>
void require(const std::optional<G>& g, const char* pass, const char* kind, const PassOptions& opts,
             std::vector<MissingGadgetError::Item>& missing) {
  if (!g) {
    missing.push_back({pass, kind, "no entry for this ring"});
  } else if (g->check.status == GadgetStatus::kRefuted) {
    missing.push_back({pass, kind, "entry is REFUTED"});
  } else if (g->check.status == GadgetStatus::kUnverified && !opts.allow_unverified) {
    missing.push_back({pass, kind, "entry is UNVERIFIED (override with allow_unverified)"});
  }
}

}  // namespace detail

/// Runs the passes needed to bring f down to `target`, in order, after
/// checking that every gadget they need is present and usable.
inline CompileResult compile(const Formula& f, const Ring& ring, const GadgetSet& gadgets, SyntacticClass target,
                             const PassOptions& opts = {}) {
  if (!gadgets.ring.empty() && gadgets.ring != ring.descriptor()) {
    throw std::invalid_argument("gadget set is for " + gadgets.ring + ", not " + ring.descriptor());
  }
  f.validate();
  SyntacticClass start = classify(f);
  bool need_neq = start == SyntacticClass::kExistential && target != SyntacticClass::kExistential;
  bool flat = f.body.is_atom() || (f.body.kind() == Body::Kind::kAnd &&
                                   std::all_of(f.body.children().begin(), f.body.children().end(),
                                               [](const Body& c) { return c.is_atom(); }));
  bool nz_conj = gadgets.nonzero && class_le(classify(gadgets.nonzero->definition), SyntacticClass::kConjunctive);
  bool has_or = start == SyntacticClass::kPositiveExistential || (start == SyntacticClass::kExistential && !(flat && nz_conj));
  bool need_or = class_le(target, SyntacticClass::kConjunctive) && has_or;
  bool need_fold = target == SyntacticClass::kSingleEquation && start != SyntacticClass::kSingleEquation;

  std::vector<MissingGadgetError::Item> missing;
  if (need_neq) detail::require(gadgets.nonzero, "eliminate_inequalities", "nonzero", opts, missing);
  if (need_or) detail::require(gadgets.axes, "eliminate_disjunctions", "axes", opts, missing);
  if (need_fold) detail::require(gadgets.origin, "fold_to_single", "origin", opts, missing);
  if (!missing.empty()) throw MissingGadgetError(std::move(missing));

  CompileResult res;
  res.stages.push_back({"input", f});
  Formula cur = f;
  auto record = [&](Formula next, PassTrace t) {
    res.stages.push_back({t.pass, next});
    res.traces.push_back(std::move(t));
    cur = std::move(next);
  };
  PassTrace t;
  if (need_neq) {
    Formula next = eliminate_inequalities(cur, *gadgets.nonzero, &t);
    record(std::move(next), t);
  }
  if (need_or) {
    Formula next = eliminate_disjunctions(cur, *gadgets.axes, &t);
    record(std::move(next), t);
  }
  if (need_fold) {
    Formula next = fold_to_single(cur, *gadgets.origin, ring.characteristic(), &t);
    record(std::move(next), t);
  }
  res.output = cur;
  return res;
}

}  // namespace dioph

#endif  // DIOPH_PASSES_HPP_
