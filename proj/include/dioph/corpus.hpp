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

// Test formulas: a fixed list and a seeded random generator. Every formula
// has at most 2 parameters, at most 3 bound variables and degree <= 2.

#ifndef DIOPH_CORPUS_HPP_
#define DIOPH_CORPUS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dioph/formula.hpp"
#include "dioph/poly.hpp"

namespace dioph {

inline const std::vector<std::string>& fixed_corpus_text() {
  static const std::vector<std::string> kCorpus = {
      "params t . t != 0",
      "params t . t != 0 | t - 1 = 0",
      "params t . t = 0 | t - 1 = 0",
      "params t . t = 0 | t - 2 = 0",
      "params t s . t*s = 0",
      "params t s . t = 0 | s = 0",
      "params t s . t != 0 & s != 0",
      "params t s . t != 0 | s != 0",
      "params t . exists x . t*x - 1 = 0",
      "params t . exists x . x^2 - t = 0",
      "params t . exists x . x^2 - t = 0 & t != 0",
      "params t s . t - s != 0",
      "params t s . t^2 - s = 0 | t - s = 0",
      "params t . exists x y . x^2 + y^2 - t = 0",
      "params t . (t = 0 | t - 1 = 0) & t - 2 != 0",
      "params t s . exists x . t*x - s = 0 & x != 0",
      "params . exists x . x^2 + 1 = 0",
      "params . 1 = 0",
      "params t . 0 = 0",
      "params t . exists x y z . x*y - t = 0 & y*z - 1 = 0",
      "params t s . (t = 0 | s = 0) & t + s - 1 = 0",
      "params t s . exists x . x^2 - t = 0 & x^2 - s != 0",
      "params t . t - 1 != 0 & t - 2 != 0",
      "params t . t = 0 | t - 1 = 0 | t - 2 = 0",
      "params t s . t*s - 1 = 0 | t - s = 0",
      "params t . exists x . t*x = 0 & x - 1 != 0",
      "params t s . t^2 + s^2 != 0",
      "params t s . exists x . (t - x = 0 | s - x = 0) & x^2 - x = 0",
      "params t s . exists x . t - x^2 = 0 | s - x^2 = 0",
      "params t s . t*s != 0 | t + s = 0",
      "params t . t^2 - t = 0",
      "params t s . exists x y . t - x^2 = 0 & s - y^2 = 0",
      "params t s . !(t = 0 & s = 0)",
      "params t . exists x . t - 2*x = 0 & x^2 - x != 0",
  };
  return kCorpus;
}

inline std::vector<Formula> fixed_corpus() {
  std::vector<Formula> out;
  for (const auto& s : fixed_corpus_text()) out.push_back(Formula::parse(s));
  return out;
}

struct RandomCorpusOptions {
  std::size_t count = 20;
  std::size_t max_params = 2;
  std::size_t max_bound = 3;
  std::size_t max_atoms = 3;
  std::int64_t max_coefficient = 3;
};

/// Deterministic in `seed`. Draws come straight from mt19937_64 output so
/// the corpus is the same on every standard library.
inline std::vector<Formula> random_corpus(std::uint64_t seed, const RandomCorpusOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  static const char* kParams[] = {"t", "s"};
  static const char* kBound[] = {"x", "y", "z"};

  std::vector<Formula> out;
  while (out.size() < opts.count) {
    Formula f;
    std::size_t np = below(opts.max_params + 1);
    std::size_t nb = below(opts.max_bound + 1);
    for (std::size_t i = 0; i < np; ++i) f.params.emplace_back(kParams[i]);
    for (std::size_t i = 0; i < nb; ++i) f.bound.emplace_back(kBound[i]);
    std::vector<std::string> vars = f.params;
    vars.insert(vars.end(), f.bound.begin(), f.bound.end());

    auto random_poly = [&]() {
      std::vector<Monomial> monos{Monomial()};
      for (std::size_t i = 0; i < vars.size(); ++i) {
        monos.push_back(Monomial::variable(vars[i]));
        for (std::size_t j = i; j < vars.size(); ++j) {
          monos.push_back(Monomial::variable(vars[i]) * Monomial::variable(vars[j]));
        }
      }
      Polynomial p;
      std::size_t terms = 1 + below(3);
      for (std::size_t k = 0; k < terms; ++k) {
        auto c = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(2 * opts.max_coefficient))) -
                 opts.max_coefficient;
        if (c >= 0) ++c;
        p += Polynomial::term(c, monos[below(monos.size())]);
      }
      return p;
    };
    auto random_atom = [&]() {
      Polynomial p = random_poly();
      return below(3) == 0 ? Body::neq(p) : Body::eq(p);
    };

    std::size_t na = 1 + below(opts.max_atoms);
    std::vector<Body> atoms;
    for (std::size_t i = 0; i < na; ++i) atoms.push_back(random_atom());
    if (na == 1) {
      f.body = atoms[0];
    } else if (na == 2) {
      f.body = below(2) == 0 ? Body::conj(atoms) : Body::disj(atoms);
    } else {
      Body inner = below(2) == 0 ? Body::conj({atoms[0], atoms[1]}) : Body::disj({atoms[0], atoms[1]});
      f.body = below(2) == 0 ? Body::conj({inner, atoms[2]}) : Body::disj({inner, atoms[2]});
    }
    // Drop declared bound variables the body never uses.
    auto used = f.body_variables();
    std::vector<std::string> kept;
    for (const auto& b : f.bound) {
      if (used.count(b) != 0) kept.push_back(b);
    }
    f.bound = kept;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace dioph

#endif  // DIOPH_CORPUS_HPP_
