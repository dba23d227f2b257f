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

#ifndef DIOPH_UNION_HPP_
#define DIOPH_UNION_HPP_

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dioph/formula.hpp"
#include "dioph/ring.hpp"

namespace dioph {

struct UnionEncoding {
  Formula formula;
  // False when Spec R is disconnected: the construction is still produced
  // but may define more than the union.
  bool sound_on_ring = true;

  const char* tag() const { return sound_on_ring ? "SOUND" : "UNSOUND_ON_THIS_RING"; }
};

/// Conjunctive definition of the union of two conjunctively defined sets.
///
/// Both systems are moved onto a shared list of witness coordinates u_1..u_m
/// (the shorter list is padded) and a fresh indicator e is added. The output
/// equations are all products p*q with p a generator of sys0 or e, and q a
/// generator of sys1 or e - 1: the ideal of the disjoint union of
/// sys0 x {e = 0} and sys1 x {e = 1}. When Spec R is connected every
/// R-point has e in {0, 1}, which makes the projection exactly the union.
inline UnionEncoding encode_union(const Formula& sys0, const Formula& sys1, const Ring& ring) {
  if (sys0.params != sys1.params) throw std::invalid_argument("encode_union: parameter lists differ");
  auto g0 = conjunct_polynomials(sys0.body);
  auto g1 = conjunct_polynomials(sys1.body);

  FreshNames names(sys0.variables());
  names.reserve_all(sys1.variables());
  std::size_t m = std::max(sys0.bound.size(), sys1.bound.size());
  std::vector<std::string> shared;
  for (std::size_t i = 0; i < m; ++i) shared.push_back(names.next("u"));
  std::string e = names.next("e");

  auto move_onto_shared = [&](const Formula& f, std::vector<Polynomial>& gens) {
    std::map<std::string, std::string> to;
    for (std::size_t i = 0; i < f.bound.size(); ++i) to.emplace(f.bound[i], shared[i]);
    for (auto& g : gens) g = rename(g, to);
  };
  move_onto_shared(sys0, g0);
  move_onto_shared(sys1, g1);

  Polynomial ev = Polynomial::variable(e);
  g0.push_back(ev);
  g1.push_back(ev - Polynomial::constant(1));

  std::vector<Body> atoms;
  for (const auto& p : g0) {
    for (const auto& q : g1) atoms.push_back(Body::eq(p * q));
  }

  UnionEncoding out;
  out.formula.params = sys0.params;
  out.formula.bound = shared;
  out.formula.bound.push_back(e);
  out.formula.body = Body::conj(std::move(atoms));
  out.sound_on_ring = ring.is_connected_spectrum().connected;
  return out;
}

}  // namespace dioph

#endif  // DIOPH_UNION_HPP_
