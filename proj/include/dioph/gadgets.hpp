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

// The three per-ring gadgets the lowering passes consume:
//
//   origin   g(x, y) whose only zero in R^2 is (0, 0)
//   axes     conjunctive definition of (R x {0}) u ({0} x R)
//   nonzero  positive-existential definition of R - {0}
//
// A gadget is only as good as its check. Finite rings are checked by full
// enumeration (VERIFIED); zbox backends are checked inside a window
// (HEURISTIC). REFUTED entries keep the offending point.

#ifndef DIOPH_GADGETS_HPP_
#define DIOPH_GADGETS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dioph/formula.hpp"
#include "dioph/numeric.hpp"
#include "dioph/oracle.hpp"
#include "dioph/poly.hpp"
#include "dioph/ring.hpp"
#include "dioph/union.hpp"

namespace dioph {

enum class GadgetStatus { kVerified, kHeuristic, kUnverified, kRefuted };

inline const char* status_name(GadgetStatus s) {
  switch (s) {
    case GadgetStatus::kVerified: return "VERIFIED";
    case GadgetStatus::kHeuristic: return "HEURISTIC";
    case GadgetStatus::kUnverified: return "UNVERIFIED";
    case GadgetStatus::kRefuted: return "REFUTED";
  }
  return "?";
}

inline GadgetStatus parse_status(const std::string& s) {
  if (s == "VERIFIED") return GadgetStatus::kVerified;
  if (s == "HEURISTIC") return GadgetStatus::kHeuristic;
  if (s == "REFUTED") return GadgetStatus::kRefuted;
  if (s == "UNVERIFIED") return GadgetStatus::kUnverified;
  throw std::invalid_argument("unknown gadget status '" + s + "'");
}

struct GadgetCheck {
  GadgetStatus status = GadgetStatus::kUnverified;
  std::string ring;      // descriptor of the backend the check ran on
  std::int64_t box = 0;  // zbox parameter window, 0 for finite rings
  Tuple witness;         // REFUTED: a point where the gadget is wrong
  std::string note;

  bool trusted() const { return status == GadgetStatus::kVerified || status == GadgetStatus::kHeuristic; }
};

struct OriginGadget {
  Polynomial g;
  std::string x = "x";
  std::string y = "y";
  GadgetCheck check;
};

struct AxesGadget {
  Formula definition;
  GadgetCheck check;
};

struct NonzeroGadget {
  Formula definition;
  GadgetCheck check;
};

struct GadgetSet {
  std::string ring;
  std::optional<OriginGadget> origin;
  std::optional<AxesGadget> axes;
  std::optional<NonzeroGadget> nonzero;
  std::vector<std::string> notes;
};

struct GadgetOptions {
  unsigned max_degree = 2;
  std::optional<std::int64_t> box;  // zbox parameter window, default the ring bound
  std::int64_t witness_factor = 4;
  std::uint64_t max_candidates = 50'000'000;
};

namespace detail {

inline std::int64_t check_box(const Ring& ring, const GadgetOptions& opts) {
  return ring.is_finite() ? 0 : opts.box.value_or(ring.bound());
}

// Compares the defined set with `expected` over the parameter window.
template <typename Expected>
GadgetCheck check_against(const Formula& f, const Ring& ring, const GadgetOptions& opts, Expected&& expected) {
  GadgetCheck c;
  c.ring = ring.descriptor();
  c.box = check_box(ring, opts);
  SearchOptions so;
  so.param_box = c.box;
  so.witness_factor = opts.witness_factor;
  DefinableSet s = definable_set(f, ring, so);
  auto dom = ring.enumerate_box(c.box).elements;
  std::vector<Tuple> all(1);
  for (std::size_t k = 0; k < f.params.size(); ++k) {
    std::vector<Tuple> next;
    for (const auto& t : all) {
      for (Element e : dom) {
        Tuple u = t;
        u.push_back(e);
        next.push_back(std::move(u));
      }
    }
    all = std::move(next);
  }
  for (const auto& t : all) {
    bool want = expected(t);
    if (want != s.contains(t)) {
      c.status = GadgetStatus::kRefuted;
      c.witness = t;
      c.note = want ? "expected point is not defined" : "defines a point outside the target set";
      return c;
    }
  }
  c.status = ring.is_finite() ? GadgetStatus::kVerified : GadgetStatus::kHeuristic;
  return c;
}

}  // namespace detail

inline GadgetCheck verify_origin(const OriginGadget& og, const Ring& ring, const GadgetOptions& opts = {}) {
  for (const auto& v : og.g.variables()) {
    if (v != og.x && v != og.y) throw std::invalid_argument("origin gadget uses variable '" + v + "'");
  }
  Formula f;
  f.params = {og.x, og.y};
  f.body = Body::eq(og.g);
  return detail::check_against(f, ring, opts, [&](const Tuple& t) { return ring.is_zero(t[0]) && ring.is_zero(t[1]); });
}

/// Checks that g's zero set in R^2 is exactly {(0, 0)}. g must have exactly
/// two variables; they are taken in sorted order.
inline GadgetCheck verify_origin_gadget(const Polynomial& g, const Ring& ring, const GadgetOptions& opts = {}) {
  auto vars = g.variables();
  if (vars.size() != 2) throw std::invalid_argument("origin gadget must have exactly two variables");
  OriginGadget og{g, *vars.begin(), *std::next(vars.begin()), {}};
  return verify_origin(og, ring, opts);
}

inline GadgetCheck verify_axes(const Formula& def, const Ring& ring, const GadgetOptions& opts = {}) {
  if (def.params.size() != 2) throw std::invalid_argument("axes gadget needs two parameters");
  if (!class_le(classify(def), SyntacticClass::kConjunctive)) {
    throw std::invalid_argument("axes gadget must be conjunctive");
  }
  return detail::check_against(def, ring, opts, [&](const Tuple& t) { return ring.is_zero(t[0]) || ring.is_zero(t[1]); });
}

inline GadgetCheck verify_nonzero(const Formula& def, const Ring& ring, const GadgetOptions& opts = {}) {
  if (def.params.size() != 1) throw std::invalid_argument("nonzero gadget needs one parameter");
  if (!class_le(classify(def), SyntacticClass::kPositiveExistential)) {
    throw std::invalid_argument("nonzero gadget must be positive-existential");
  }
  return detail::check_against(def, ring, opts, [&](const Tuple& t) { return !ring.is_zero(t[0]); });
}

/// Quadratic norm form x^2 - d*y^2 of Q(sqrt d) (or of F_p(sqrt d)). It is an
/// origin gadget exactly when d is not a square; that is the caller's claim
/// and stays UNVERIFIED here.
inline OriginGadget norm_form_gadget(std::int64_t d) {
  if (d == 0) throw std::invalid_argument("norm form needs a nonzero d");
  OriginGadget og;
  og.g = Polynomial::variable("x").pow(2) - Polynomial::constant(d) * Polynomial::variable("y").pow(2);
  og.check.note = "norm form for d = " + std::to_string(d);
  return og;
}

/// First origin gadget in a fixed enumeration order: total degree ascending,
/// then coefficient vectors over {0, ..., char-1} in lexicographic order with
/// monomials listed x, y, x^2, x*y, y^2, x^3, ... (earlier monomials are the
/// more significant digits).
inline std::optional<OriginGadget> search_origin_gadget(const Ring& ring, unsigned max_degree,
                                                        const GadgetOptions& opts = {}) {
  if (!ring.is_finite()) throw std::invalid_argument("origin gadget search needs a finite backend");
  if (ring.is_zero_ring()) {
    OriginGadget og;
    og.check = {GadgetStatus::kVerified, ring.descriptor(), 0, {}, "zero ring: R^2 is the single point (0,0)"};
    return og;
  }
  std::int64_t base = ring.characteristic();
  std::vector<std::pair<unsigned, unsigned>> monos;  // (exp x, exp y)
  for (unsigned d = 1; d <= max_degree; ++d) {
    for (unsigned i = d + 1; i-- > 0;) monos.emplace_back(i, d - i);
  }
  auto dom = ring.enumerate().elements;
  // Monomial values at every point other than the origin.
  std::vector<std::vector<Element>> values;
  for (Element a : dom) {
    for (Element b : dom) {
      if (ring.is_zero(a) && ring.is_zero(b)) continue;
      std::vector<Element> row;
      for (auto [ex, ey] : monos) row.push_back(ring.mul(ring.pow(a, ex), ring.pow(b, ey)));
      values.push_back(std::move(row));
    }
  }
  std::vector<Element> coef_image;
  for (std::int64_t k = 0; k < base; ++k) coef_image.push_back(ring.canonical(k));

  std::size_t used = 0;
  for (unsigned d = 1; d <= max_degree; ++d) {
    std::size_t top = used;  // first monomial of degree d
    used += d + 1;
    long double space = std::pow(static_cast<long double>(base), static_cast<long double>(used));
    if (space > static_cast<long double>(opts.max_candidates)) {
      throw std::invalid_argument("origin gadget search space too large at degree " + std::to_string(d));
    }
    std::vector<std::int64_t> digits(used, 0);
    for (;;) {
      // Odometer step, least significant digit last.
      std::size_t k = used;
      while (k > 0) {
        --k;
        if (++digits[k] < base) break;
        digits[k] = 0;
        if (k == 0) {
          k = used + 1;
          break;
        }
      }
      if (k == used + 1) break;
      bool has_top = std::any_of(digits.begin() + static_cast<std::ptrdiff_t>(top), digits.end(),
                                 [](std::int64_t c) { return c != 0; });
      if (!has_top) continue;
      bool ok = true;
      for (const auto& row : values) {
        Element acc = ring.zero();
        for (std::size_t j = 0; j < used; ++j) {
          if (digits[j] != 0) acc = ring.add(acc, ring.mul(coef_image[static_cast<std::size_t>(digits[j])], row[j]));
        }
        if (ring.is_zero(acc)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      OriginGadget og;
      for (std::size_t j = 0; j < used; ++j) {
        if (digits[j] == 0) continue;
        std::vector<Monomial::Factor> fs;
        fs.emplace_back("x", monos[j].first);
        fs.emplace_back("y", monos[j].second);
        og.g += Polynomial::term(digits[j], Monomial(std::move(fs)));
      }
      og.check = verify_origin(og, ring, opts);
      return og;
    }
  }
  return std::nullopt;
}

/// Combines origin gadgets over Z/m and Z/k (gcd 1) into one over Z/mk whose
/// coefficients reduce to g1 mod m and to g2 mod k.
inline OriginGadget crt_combine_origin(const OriginGadget& g1, const Ring& r1, const OriginGadget& g2, const Ring& r2,
                                       const GadgetOptions& opts = {}) {
  if (r1.kind() != Ring::Kind::kZMod || r2.kind() != Ring::Kind::kZMod) {
    throw std::invalid_argument("crt_combine_origin needs zmod backends");
  }
  std::int64_t m = r1.modulus(), k = r2.modulus();
  if (std::gcd(m, k) != 1) throw std::invalid_argument("crt_combine_origin: moduli are not coprime");
  if (g1.check.status != GadgetStatus::kVerified || g2.check.status != GadgetStatus::kVerified) {
    throw std::invalid_argument("crt_combine_origin: both inputs must be VERIFIED");
  }
  std::int64_t n = checked_mul(m, k);
  // e1 = 1 mod m, 0 mod k; e2 = 0 mod m, 1 mod k.
  std::int64_t e1 = m == 1 ? 0 : mul_mod(k, mod_inverse(k % m, m), n);
  std::int64_t e2 = k == 1 ? 0 : mul_mod(m, mod_inverse(m % k, k), n);
  Polynomial h2 = rename(g2.g, {{g2.x, g1.x}, {g2.y, g1.y}});
  std::map<Monomial, std::int64_t, GradedOrder> coefs;
  for (const auto& [mono, c] : g1.g.terms()) coefs[mono] = mul_mod(e1, mod_floor(c, n), n);
  for (const auto& [mono, c] : h2.terms()) coefs[mono] = mod_floor(coefs[mono] + mul_mod(e2, mod_floor(c, n), n), n);
  OriginGadget out;
  out.x = g1.x;
  out.y = g1.y;
  for (const auto& [mono, c] : coefs) out.g += Polynomial::term(c, mono);
  Ring target = Ring::zmod(n);
  out.check = verify_origin(out, target, opts);
  return out;
}

/// The library's stock gadgets for a backend, each already checked on it.
inline GadgetSet default_gadgets(const Ring& ring, const GadgetOptions& opts = {}) {
  GadgetSet gs;
  gs.ring = ring.descriptor();

  // nonzero
  if (ring.kind() == Ring::Kind::kZBox) {
    NonzeroGadget nz{Formula::parse("params t . exists x y . t - (2*x - 1)*(3*y - 1) = 0"), {}};
    nz.check = verify_nonzero(nz.definition, ring, opts);
    gs.nonzero = nz;
  } else if (ring.is_zero_ring()) {
    gs.notes.push_back("nonzero: degenerate zero ring; R - {0} is empty and every positive formula holds, "
                       "so no positive-existential definition exists");
  } else {
    // Over Z/n, t != 0 iff n/p lies in tR for some prime p | n; for a prime
    // power this is the single equation t*x = p^(e-1).
    std::int64_t n = ring.characteristic();
    std::string body;
    for (const auto& pp : factorize(n)) {
      if (!body.empty()) body += " | ";
      body += "t*x - " + std::to_string(n / pp.prime) + " = 0";
    }
    NonzeroGadget nz{Formula::parse("params t . exists x . " + body), {}};
    nz.check = verify_nonzero(nz.definition, ring, opts);
    if (nz.check.trusted()) {
      gs.nonzero = nz;
    } else {
      gs.notes.push_back("nonzero: candidate '" + nz.definition.to_string() + "' refuted");
    }
  }

  // axes
  {
    AxesGadget ax;
    if (ring.is_domain()) {
      ax.definition = Formula::parse("params z w . z*w = 0");
    } else {
      ax.definition = encode_union(Formula::parse("params z w . z = 0"), Formula::parse("params z w . w = 0"), ring).formula;
    }
    ax.check = verify_axes(ax.definition, ring, opts);
    if (ax.check.trusted()) {
      gs.axes = ax;
    } else {
      std::string why = ring.is_connected_spectrum().connected
                            ? ""
                            : "; Spec R is disconnected, so no conjunctive definition of the axes exists";
      gs.notes.push_back("axes: candidate '" + ax.definition.to_string() + "' refuted" + why);
    }
  }

  // origin
  if (ring.kind() == Ring::Kind::kZBox) {
    OriginGadget og = norm_form_gadget(-1);
    og.check = verify_origin(og, ring, opts);
    gs.origin = og;
  } else if (ring.kind() == Ring::Kind::kZMod && factorize(std::max<std::int64_t>(ring.modulus(), 1)).size() > 1) {
    std::optional<OriginGadget> acc;
    std::optional<Ring> acc_ring;
    for (const auto& f : crt_split(ring)) {
      Ring part = Ring::zmod(f.modulus);
      auto g = search_origin_gadget(part, opts.max_degree, opts);
      if (!g) {
        acc.reset();
        gs.notes.push_back("origin: none up to degree " + std::to_string(opts.max_degree) + " over " + part.descriptor());
        break;
      }
      if (!acc) {
        acc = g;
        acc_ring = part;
      } else {
        acc = crt_combine_origin(*acc, *acc_ring, *g, part, opts);
        acc_ring = Ring::zmod(acc_ring->modulus() * part.modulus());
      }
    }
    if (acc) gs.origin = acc;
  } else {
    auto g = search_origin_gadget(ring, opts.max_degree, opts);
    if (g) {
      gs.origin = g;
    } else {
      gs.notes.push_back("origin: none up to degree " + std::to_string(opts.max_degree));
    }
  }
  if (ring.is_zero_ring()) gs.notes.push_back("degenerate: zero ring");
  return gs;
}

}  // namespace dioph

#endif  // DIOPH_GADGETS_HPP_
