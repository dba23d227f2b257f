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

// Ground-truth semantics by enumeration.
//
// A defined set is computed by depth-first search over the variables in
// declaration order (parameters, then witnesses). Each atom is kept as a
// partially evaluated polynomial: when variable d receives a value, the
// terms that agree on the exponents of the later variables are merged. With
// terms sorted on the reversed exponent vector those terms are adjacent, so
// one specialisation step is a single linear pass. Atoms become constants as
// soon as their last variable is fixed, and the body is evaluated in
// three-valued logic at every node, so a branch is cut as soon as it is
// decided either way.

#ifndef DIOPH_ORACLE_HPP_
#define DIOPH_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dioph/formula.hpp"
#include "dioph/poly.hpp"
#include "dioph/ring.hpp"

namespace dioph {

class SearchBudgetExceeded : public std::runtime_error {
 public:
  SearchBudgetExceeded() : std::runtime_error("search node budget exceeded") {}
};

struct SearchOptions {
  std::optional<std::int64_t> param_box;    // zbox: parameter window, default the ring bound
  std::optional<std::int64_t> witness_box;  // zbox: witness window, default factor * param window
  std::int64_t witness_factor = 4;
  std::uint64_t node_budget = 0;  // 0 means unlimited
  bool record_witnesses = false;
  unsigned threads = 1;  // 0 means std::thread::hardware_concurrency()
};

struct DefinableSet {
  explicit DefinableSet(Ring r) : ring(std::move(r)) {}

  Ring ring;
  std::size_t arity = 0;
  std::vector<Tuple> tuples;  // sorted, duplicate free
  bool exhaustive = true;
  std::int64_t param_box = 0;    // zbox windows used, 0 for finite rings
  std::int64_t witness_box = 0;
  std::map<Tuple, Tuple> witnesses;  // first witness in search order, if recorded

  std::size_t size() const { return tuples.size(); }
  bool empty() const { return tuples.empty(); }

  bool contains(const Tuple& t) const { return std::binary_search(tuples.begin(), tuples.end(), t); }

  /// One tuple per line, entries separated by a space; the empty tuple is
  /// written "()".
  std::string to_text() const {
    std::string s;
    for (const auto& t : tuples) {
      if (t.empty()) {
        s += "()";
      } else {
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (i > 0) s += " ";
          s += ring.format(t[i]);
        }
      }
      s += "\n";
    }
    return s;
  }

  friend bool operator==(const DefinableSet& a, const DefinableSet& b) {
    return a.ring == b.ring && a.arity == b.arity && a.tuples == b.tuples && a.exhaustive == b.exhaustive;
  }
};

namespace detail {

struct ModArith {
  std::int64_t n;
  Element add(Element a, Element b) const {
    std::int64_t s = a.code + b.code;
    return Element{s >= n ? s - n : s};
  }
  Element mul(Element a, Element b) const { return Element{(a.code * b.code) % n}; }
  Element one() const { return Element{1 % n}; }
};

struct RingArith {
  const Ring* ring;
  Element add(Element a, Element b) const { return ring->add(a, b); }
  Element mul(Element a, Element b) const { return ring->mul(a, b); }
  Element one() const { return ring->one(); }
};

struct CompiledAtom {
  Relation rel = Relation::kEq;
  std::vector<Element> coefs;
  std::vector<std::uint32_t> exps;  // row-major, one row per term
  std::vector<int> lastvar;         // highest variable with a nonzero exponent, -1 if none
  std::vector<bool> involves;       // per variable
};

struct BodyNode {
  Body::Kind kind = Body::Kind::kAtom;
  int atom = -1;
  std::vector<int> children;
};

struct Entry {
  Element coef;
  std::uint32_t row;
};

// Shared, immutable compilation of one formula over one ring.
struct Problem {
  std::size_t nvars = 0;
  std::size_t nparams = 0;
  std::vector<CompiledAtom> atoms;
  std::vector<BodyNode> nodes;  // nodes[0] is the root
  std::vector<unsigned> maxexp;  // per variable, across atoms
  std::vector<std::vector<Element>> domains;

  Problem(const Formula& f, const Ring& ring) {
    std::map<std::string, std::size_t> index;
    for (const auto& v : f.params) index.emplace(v, index.size());
    for (const auto& v : f.bound) index.emplace(v, index.size());
    nvars = index.size();
    nparams = f.params.size();
    maxexp.assign(nvars, 0);
    compile_node(f.body, ring, index);
  }

  int compile_node(const Body& b, const Ring& ring, const std::map<std::string, std::size_t>& index) {
    int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].kind = b.kind();
    if (b.is_atom()) {
      nodes[id].atom = static_cast<int>(atoms.size());
      atoms.push_back(compile_atom(b.atom(), ring, index));
      return id;
    }
    for (const auto& c : b.children()) {
      int child = compile_node(c, ring, index);
      nodes[id].children.push_back(child);
    }
    return id;
  }

  CompiledAtom compile_atom(const Atom& a, const Ring& ring, const std::map<std::string, std::size_t>& index) {
    CompiledAtom out;
    out.rel = a.rel;
    out.involves.assign(nvars, false);
    struct Row {
      std::vector<std::uint32_t> e;
      Element c;
    };
    std::vector<Row> rows;
    for (const auto& [m, c] : a.lhs.terms()) {
      Element ce = ring.canonical(c);
      if (ring.is_zero(ce)) continue;
      Row r{std::vector<std::uint32_t>(nvars, 0), ce};
      for (const auto& [var, e] : m.factors()) {
        auto it = index.find(var);
        if (it == index.end()) throw UnboundVariableError(var);
        r.e[it->second] = e;
      }
      rows.push_back(std::move(r));
    }
    // Reverse-lexicographic on the exponent vector: the last variable is the
    // most significant key.
    std::sort(rows.begin(), rows.end(), [&](const Row& x, const Row& y) {
      for (std::size_t v = nvars; v-- > 0;) {
        if (x.e[v] != y.e[v]) return x.e[v] < y.e[v];
      }
      return false;
    });
    for (const auto& r : rows) {
      int last = -1;
      for (std::size_t v = 0; v < nvars; ++v) {
        if (r.e[v] > 0) {
          last = static_cast<int>(v);
          out.involves[v] = true;
          maxexp[v] = std::max(maxexp[v], r.e[v]);
        }
      }
      out.coefs.push_back(r.c);
      out.exps.insert(out.exps.end(), r.e.begin(), r.e.end());
      out.lastvar.push_back(last);
    }
    return out;
  }
};

// Three-valued truth: 0 false, 1 true, 2 undecided.
constexpr std::int8_t kFalse = 0, kTrue = 1, kUnknown = 2;

template <typename Arith>
class Searcher {
 public:
  Searcher(const Problem& p, Arith arith, std::uint64_t budget)
      : p_(p), arith_(arith), budget_(budget), values_(p.nvars) {
    std::size_t na = p.atoms.size();
    store_.assign(p.nvars + 1, std::vector<std::vector<Entry>>(na));
    view_.assign(p.nvars + 1, std::vector<const std::vector<Entry>*>(na, nullptr));
    status_.assign(p.nvars + 1, std::vector<std::int8_t>(na, kUnknown));
    pw_.resize(p.nvars);
    for (std::size_t a = 0; a < na; ++a) {
      auto& base = store_[0][a];
      const auto& atom = p.atoms[a];
      for (std::size_t r = 0; r < atom.coefs.size(); ++r) base.push_back({atom.coefs[r], static_cast<std::uint32_t>(r)});
      view_[0][a] = &base;
      status_[0][a] = classify_entries(a, base, -1);
    }
  }

  /// Enumerates parameter tuples whose first parameter lies in
  /// [first_lo, first_hi) of its domain and appends members in order.
  void collect(std::size_t first_lo, std::size_t first_hi, std::vector<Tuple>& out,
               std::map<Tuple, Tuple>* witnesses) {
    out_ = &out;
    witnesses_ = witnesses;
    if (p_.nparams == 0) {
      params(0);
      return;
    }
    if (eval(0) == kFalse) return;
    const auto& dom = p_.domains[0];
    for (std::size_t i = first_lo; i < first_hi && i < dom.size(); ++i) {
      assign(0, dom[i]);
      params(1);
    }
  }

  /// Membership of one parameter tuple; fills `witness` on success.
  bool member(const Tuple& t, Tuple* witness) {
    for (std::size_t d = 0; d < p_.nparams; ++d) {
      if (eval(d) == kFalse) return false;
      assign(d, t[d]);
    }
    if (!search(p_.nparams)) return false;
    if (witness) witness->assign(values_.begin() + static_cast<std::ptrdiff_t>(p_.nparams), values_.end());
    return true;
  }

 private:
  std::int8_t classify_entries(std::size_t a, const std::vector<Entry>& es, int depth) const {
    if (es.empty()) return 0;  // value zero
    if (es.size() == 1 && p_.atoms[a].lastvar[es[0].row] <= depth) return 1;  // nonzero constant
    return kUnknown;
  }

  std::int8_t atom_truth(std::size_t d, int atom) const {
    std::int8_t s = status_[d][static_cast<std::size_t>(atom)];
    if (s == kUnknown) return kUnknown;
    bool is_zero = s == 0;
    return (p_.atoms[static_cast<std::size_t>(atom)].rel == Relation::kEq) == is_zero ? kTrue : kFalse;
  }

  std::int8_t eval_node(std::size_t d, int id) const {
    const BodyNode& n = p_.nodes[static_cast<std::size_t>(id)];
    if (n.kind == Body::Kind::kAtom) return atom_truth(d, n.atom);
    bool is_and = n.kind == Body::Kind::kAnd;
    bool undecided = false;
    for (int c : n.children) {
      std::int8_t v = eval_node(d, c);
      if (v == kUnknown) {
        undecided = true;
      } else if ((v == kTrue) != is_and) {
        return v;  // false under AND, true under OR
      }
    }
    if (undecided) return kUnknown;
    return is_and ? kTrue : kFalse;
  }

  std::int8_t eval(std::size_t d) const { return eval_node(d, 0); }

  // Fixes variable d and computes level d + 1.
  void assign(std::size_t d, Element value) {
    if (budget_ != 0 && ++nodes_ > budget_) throw SearchBudgetExceeded();
    values_[d] = value;
    auto& pw = pw_[d];
    pw.resize(p_.maxexp[d] + 1);
    pw[0] = arith_.one();
    for (std::size_t e = 1; e < pw.size(); ++e) pw[e] = arith_.mul(pw[e - 1], value);
    const std::size_t nv = p_.nvars;
    for (std::size_t a = 0; a < p_.atoms.size(); ++a) {
      const auto& atom = p_.atoms[a];
      if (!atom.involves[d]) {
        view_[d + 1][a] = view_[d][a];
        status_[d + 1][a] = status_[d][a];
        continue;
      }
      const auto& in = *view_[d][a];
      auto& out = store_[d + 1][a];
      out.clear();
      std::size_t i = 0;
      while (i < in.size()) {
        const std::uint32_t* head = &atom.exps[static_cast<std::size_t>(in[i].row) * nv];
        Element sum = arith_.mul(in[i].coef, pw[head[d]]);
        std::size_t j = i + 1;
        for (; j < in.size(); ++j) {
          const std::uint32_t* row = &atom.exps[static_cast<std::size_t>(in[j].row) * nv];
          bool same = true;
          for (std::size_t v = nv; v-- > d + 1;) {
            if (row[v] != head[v]) {
              same = false;
              break;
            }
          }
          if (!same) break;
          sum = arith_.add(sum, arith_.mul(in[j].coef, pw[row[d]]));
        }
        if (sum.code != 0) out.push_back({sum, in[i].row});
        i = j;
      }
      view_[d + 1][a] = &out;
      status_[d + 1][a] = classify_entries(a, out, static_cast<int>(d));
    }
  }

  void params(std::size_t d) {
    if (d == p_.nparams) {
      if (search(d)) {
        Tuple t(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(p_.nparams));
        if (witnesses_) {
          witnesses_->emplace(t, Tuple(values_.begin() + static_cast<std::ptrdiff_t>(p_.nparams), values_.end()));
        }
        out_->push_back(std::move(t));
      }
      return;
    }
    if (eval(d) == kFalse) return;
    for (Element v : p_.domains[d]) {
      assign(d, v);
      params(d + 1);
    }
  }

  bool search(std::size_t d) {
    std::int8_t tv = eval(d);
    if (tv == kFalse) return false;
    if (tv == kTrue) {
      for (std::size_t v = d; v < p_.nvars; ++v) values_[v] = p_.domains[v].front();
      return true;
    }
    for (Element v : p_.domains[d]) {
      assign(d, v);
      if (search(d + 1)) return true;
    }
    return false;
  }

  const Problem& p_;
  Arith arith_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Element> values_;
  std::vector<std::vector<std::vector<Entry>>> store_;
  std::vector<std::vector<const std::vector<Entry>*>> view_;
  std::vector<std::vector<std::int8_t>> status_;
  std::vector<std::vector<Element>> pw_;
  std::vector<Tuple>* out_ = nullptr;
  std::map<Tuple, Tuple>* witnesses_ = nullptr;
};

inline bool small_modulus(const Ring& ring) {
  return ring.kind() == Ring::Kind::kZMod && ring.modulus() <= (std::int64_t{1} << 31);
}

template <typename Fn>
auto with_arith(const Ring& ring, Fn&& fn) {
  if (small_modulus(ring)) return fn(ModArith{ring.modulus()});
  return fn(RingArith{&ring});
}

struct Windows {
  std::int64_t param = 0;
  std::int64_t witness = 0;
};

inline Windows windows_for(const Ring& ring, const SearchOptions& opts) {
  if (ring.is_finite()) return {};
  Windows w;
  w.param = opts.param_box.value_or(ring.bound());
  w.witness = opts.witness_box.value_or(opts.witness_factor * w.param);
  return w;
}

inline void fill_domains(Problem& p, const Ring& ring, const Windows& w) {
  p.domains.clear();
  auto params = ring.enumerate_box(w.param).elements;
  auto wit = ring.enumerate_box(w.witness).elements;
  for (std::size_t v = 0; v < p.nvars; ++v) p.domains.push_back(v < p.nparams ? params : wit);
}

}  // namespace detail

/// The parameter tuples for which some witness tuple satisfies the body.
/// For zbox backends both tuples range over the configured windows and the
/// result is marked non-exhaustive.
inline DefinableSet definable_set(const Formula& f, const Ring& ring, const SearchOptions& opts = {}) {
  f.validate();
  DefinableSet out(ring);
  out.arity = f.params.size();
  out.exhaustive = ring.is_finite();
  auto w = detail::windows_for(ring, opts);
  out.param_box = w.param;
  out.witness_box = w.witness;

  detail::Problem problem(f, ring);
  detail::fill_domains(problem, ring, w);

  unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
  std::size_t first_size = problem.nparams == 0 ? 1 : problem.domains[0].size();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, first_size));
  auto* wit = opts.record_witnesses ? &out.witnesses : nullptr;

  detail::with_arith(ring, [&](auto arith) {
    using A = decltype(arith);
    if (threads <= 1) {
      detail::Searcher<A> s(problem, arith, opts.node_budget);
      s.collect(0, first_size, out.tuples, wit);
      return 0;
    }
    // Contiguous slices of the first parameter keep the merged output sorted.
    std::vector<std::vector<Tuple>> parts(threads);
    std::vector<std::map<Tuple, Tuple>> part_wit(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    std::size_t chunk = (first_size + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        try {
          detail::Searcher<A> s(problem, arith, opts.node_budget);
          s.collect(k * chunk, std::min(first_size, (k + 1) * chunk), parts[k], wit ? &part_wit[k] : nullptr);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (unsigned k = 0; k < threads; ++k) {
      out.tuples.insert(out.tuples.end(), parts[k].begin(), parts[k].end());
      if (wit) wit->merge(part_wit[k]);
    }
    return 0;
  });
  return out;
}

/// Whether `params` belongs to the set defined by f, searching witnesses in
/// the given window (zbox) or exhaustively (finite rings).
inline bool is_member(const Formula& f, const Ring& ring, const Tuple& params, const SearchOptions& opts = {},
                      Tuple* witness = nullptr) {
  f.validate();
  if (params.size() != f.params.size()) throw std::invalid_argument("tuple arity does not match the formula");
  detail::Problem problem(f, ring);
  detail::fill_domains(problem, ring, detail::windows_for(ring, opts));
  return detail::with_arith(ring, [&](auto arith) {
    detail::Searcher<decltype(arith)> s(problem, arith, opts.node_budget);
    return s.member(params, witness);
  });
}

enum class VerdictKind { kEqual, kDiffer, kHeuristicEqual, kInconclusive };

inline const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::kEqual: return "EQUAL";
    case VerdictKind::kDiffer: return "DIFFER";
    case VerdictKind::kHeuristicEqual: return "HEURISTIC_EQUAL";
    case VerdictKind::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::kEqual;
  Tuple witness;         // DIFFER: parameter tuple in exactly one of the sets
  int only_in = 0;       // DIFFER: 1 or 2, which formula contains `witness`
  Tuple witness_values;  // DIFFER: first witness assignment on that side
  std::string note;

  bool ok() const { return kind == VerdictKind::kEqual || kind == VerdictKind::kHeuristicEqual; }
};

/// Compares the sets defined by two formulas of equal arity. Exact on
/// finite rings; on zbox each side's members must reappear on the other side
/// with the witness window enlarged by `witness_factor`.
inline Verdict sets_equal(const Formula& f1, const Formula& f2, const Ring& ring, const SearchOptions& opts = {}) {
  if (f1.params.size() != f2.params.size()) throw std::invalid_argument("sets_equal: arity mismatch");
  SearchOptions o = opts;
  o.record_witnesses = true;
  Verdict v;
  try {
    DefinableSet a = definable_set(f1, ring, o);
    DefinableSet b = definable_set(f2, ring, o);
    if (ring.is_finite()) {
      auto ia = a.tuples.begin(), ib = b.tuples.begin();
      while (ia != a.tuples.end() || ib != b.tuples.end()) {
        if (ib == b.tuples.end() || (ia != a.tuples.end() && *ia < *ib)) {
          return {VerdictKind::kDiffer, *ia, 1, a.witnesses.at(*ia), ""};
        }
        if (ia == a.tuples.end() || *ib < *ia) {
          return {VerdictKind::kDiffer, *ib, 2, b.witnesses.at(*ib), ""};
        }
        ++ia;
        ++ib;
      }
      v.kind = VerdictKind::kEqual;
      return v;
    }
    SearchOptions wide = o;
    wide.witness_box = o.witness_factor * a.witness_box;
    for (const auto& t : a.tuples) {
      if (!b.contains(t) && !is_member(f2, ring, t, wide)) {
        return {VerdictKind::kDiffer, t, 1, a.witnesses.at(t), "not found in enlarged witness window"};
      }
    }
    for (const auto& t : b.tuples) {
      if (!a.contains(t) && !is_member(f1, ring, t, wide)) {
        return {VerdictKind::kDiffer, t, 2, b.witnesses.at(t), "not found in enlarged witness window"};
      }
    }
    v.kind = VerdictKind::kHeuristicEqual;
    v.note = "param window " + std::to_string(a.param_box) + ", witness window " + std::to_string(a.witness_box);
    return v;
  } catch (const SearchBudgetExceeded&) {
    v.kind = VerdictKind::kInconclusive;
    v.note = "node budget exhausted";
    return v;
  }
}

struct ProductVerdict {
  bool is_product = true;
  Tuple first;    // member whose left components are used
  Tuple second;   // member whose right components are used
  Tuple missing;  // their recombination, absent from the set
};

/// Tests whether a set over R1 x R2 is A1 x A2 under the componentwise
/// identification (R1 x R2)^n = R1^n x R2^n.
inline ProductVerdict is_product_set(const DefinableSet& s) {
  if (s.ring.kind() != Ring::Kind::kProduct) throw std::invalid_argument("is_product_set needs a product backend");
  if (!s.exhaustive) throw std::invalid_argument("is_product_set needs an exhaustive set");
  const Ring& r = s.ring;
  std::vector<Tuple> lefts, rights;
  for (const auto& t : s.tuples) {
    Tuple l, rt;
    for (Element e : t) {
      auto [a, b] = r.split(e);
      l.push_back(a);
      rt.push_back(b);
    }
    lefts.push_back(std::move(l));
    rights.push_back(std::move(rt));
  }
  auto uniq = [](std::vector<Tuple> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v.size();
  };
  if (uniq(lefts) * uniq(rights) == s.tuples.size()) return {};
  for (std::size_t i = 0; i < s.tuples.size(); ++i) {
    for (std::size_t j = 0; j < s.tuples.size(); ++j) {
      Tuple mix;
      for (std::size_t k = 0; k < s.arity; ++k) mix.push_back(r.join(lefts[i][k], rights[j][k]));
      if (!s.contains(mix)) return {false, s.tuples[i], s.tuples[j], mix};
    }
  }
  throw std::logic_error("is_product_set: inconsistent projection sizes");
}

/// Number of zeros of p in R^k over the listed variables, which must
/// include every variable of p.
inline std::uint64_t count_solutions(const Polynomial& p, const Ring& ring, const std::vector<std::string>& variables) {
  if (!ring.is_finite()) throw std::invalid_argument("count_solutions needs a finite backend");
  Formula f;
  f.params = variables;
  f.body = Body::eq(p);
  f.validate();
  return definable_set(f, ring).size();
}

/// Number of zeros of p in R^k, k = number of variables of p.
inline std::uint64_t count_solutions(const Polynomial& p, const Ring& ring) {
  auto vs = p.variables();
  return count_solutions(p, ring, std::vector<std::string>(vs.begin(), vs.end()));
}

}  // namespace dioph

#endif  // DIOPH_ORACLE_HPP_
