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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "dioph/dioph.hpp"
#include "support/naive_oracle.hpp"

namespace {

using namespace dioph;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<naive::Point> points(const DefinableSet& s) {
  std::set<naive::Point> out;
  for (const auto& t : s.tuples) {
    naive::Point p;
    for (Element e : t) p.push_back(e.code);
    out.insert(p);
  }
  return out;
}

std::vector<Formula> acceptance_corpus() {
  auto out = fixed_corpus();
  RandomCorpusOptions ro;
  ro.count = 20;
  ro.max_atoms = 2;
  for (auto& f : random_corpus(20260101, ro)) out.push_back(std::move(f));
  return out;
}

const std::array<std::int64_t, 7> kRings = {2, 3, 4, 5, 7, 8, 9};

// 1. Every pass stage defines the same set as the input, on every ring.
Outcome pipeline_soundness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto corpus = acceptance_corpus();
  std::size_t stages = 0, single = 0, conj = 0;
  for (std::int64_t n : kRings) {
    Ring r = Ring::zmod(n);
    GadgetSet gs = default_gadgets(r);
    SyntacticClass target = gs.origin ? SyntacticClass::kSingleEquation : SyntacticClass::kConjunctive;
    (target == SyntacticClass::kSingleEquation ? single : conj) += 1;
    for (const auto& f : corpus) {
      CompileResult res;
      try {
        res = compile(f, r, gs, target);
      } catch (const std::exception& e) {
        o.fail(f.to_string() + " over Z/" + std::to_string(n) + ": " + e.what());
        continue;
      }
      auto want = naive::defined_set(f, n);
      for (std::size_t i = 1; i < res.stages.size(); ++i) {
        ++stages;
        Verdict v = sets_equal(f, res.stages[i].formula, r);
        if (v.kind != VerdictKind::kEqual || points(definable_set(res.stages[i].formula, r)) != want) {
          o.fail(res.stages[i].name + " on " + f.to_string() + " over Z/" + std::to_string(n));
        }
      }
    }
  }
  double secs = seconds_since(t0);
  if (corpus.size() < 30) o.fail("corpus has fewer than 30 formulas");
  if (secs > 120) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(corpus.size()) + " formulas x 7 rings, " + std::to_string(stages) +
               " stages EQUAL; single-equation target on " + std::to_string(single) +
               " fields, conjunctive target on Z/4, Z/8, Z/9 (no origin gadget); " + std::to_string(secs).substr(0, 5) +
               " s";
  }
  return o;
}

// 2. zeros(g(f1, f2)) = zeros(f1) & zeros(f2) over Z/3 for every pair of
// polynomials of degree <= 2 in x, y.
Outcome fold_correctness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  const char* monos[] = {"1", "x", "y", "x^2", "x*y", "y^2"};
  std::vector<Polynomial> basis;
  for (const char* m : monos) basis.push_back(Polynomial::parse(m));
  std::vector<Polynomial> polys;
  std::vector<std::array<long long, 9>> values;
  for (int code = 0; code < 729; ++code) {
    Polynomial p;
    int c = code;
    for (int k = 0; k < 6; ++k, c /= 3) p += Polynomial::constant(c % 3) * basis[static_cast<std::size_t>(k)];
    std::array<long long, 9> v{};
    for (int i = 0; i < 9; ++i) v[static_cast<std::size_t>(i)] = naive::eval(p, {{"x", i / 3}, {"y", i % 3}}, 3);
    polys.push_back(p);
    values.push_back(v);
  }
  OriginGadget og;
  og.g = Polynomial::parse("x^2 + y^2");
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < polys.size() && o.pass; ++i) {
    for (std::size_t j = 0; j < polys.size(); ++j) {
      ++pairs;
      Polynomial h = reduce_coefficients(fold_polynomials(og, polys[i], polys[j]), 3);
      for (int k = 0; k < 9; ++k) {
        bool both = values[i][static_cast<std::size_t>(k)] == 0 && values[j][static_cast<std::size_t>(k)] == 0;
        bool zero = naive::eval(h, {{"x", k / 3}, {"y", k % 3}}, 3) == 0;
        if (both != zero) {
          o.fail("pair " + polys[i].to_string() + " / " + polys[j].to_string());
          break;
        }
      }
    }
  }
  double secs = seconds_since(t0);
  if (pairs != 531441 && o.pass) o.fail("checked " + std::to_string(pairs) + " pairs");
  if (secs > 60) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "531441 pairs over 9 points, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

Formula axes_formula() { return Formula::parse("params t1 t2 . t1 = 0 | t2 = 0"); }

UnionEncoding axes_encoding(const Ring& r) {
  return encode_union(Formula::parse("params t1 t2 . t1 = 0"), Formula::parse("params t1 t2 . t2 = 0"), r);
}

// 3. The union encoding defines exactly the 2n - 1 axis points.
Outcome union_counts() {
  Outcome o;
  std::string counts;
  for (auto [n, want] : std::vector<std::pair<std::int64_t, std::size_t>>{{4, 7}, {8, 15}, {9, 17}}) {
    Ring r = Ring::zmod(n);
    auto s = definable_set(axes_encoding(r).formula, r);
    if (s.size() != want) o.fail("Z/" + std::to_string(n) + " gave " + std::to_string(s.size()));
    if (points(s) != naive::defined_set(axes_formula(), n)) o.fail("Z/" + std::to_string(n) + " differs from the axes");
    counts += (counts.empty() ? "" : ", ") + std::string("Z/") + std::to_string(n) + ": " + std::to_string(s.size());
  }
  if (o.pass) o.detail = counts + ", each equal to the axes";
  return o;
}

// 4. Over Z/6 the encoding overshoots; the axes over Z/2 x Z/3 are not a
// product set.
Outcome disconnected_failure() {
  Outcome o;
  Ring r6 = Ring::zmod(6);
  auto enc = axes_encoding(r6);
  auto got = points(definable_set(enc.formula, r6));
  auto axes = naive::defined_set(axes_formula(), 6);
  if (axes.size() != 11) o.fail("axes over Z/6 has " + std::to_string(axes.size()) + " points");
  if (!std::includes(got.begin(), got.end(), axes.begin(), axes.end())) o.fail("encoding misses an axis point");
  if (got.size() <= axes.size()) o.fail("encoding is not a strict superset");
  if (got.count({3, 2}) == 0) o.fail("(3,2) not among the extras");
  if (enc.sound_on_ring) o.fail("encoding not tagged unsound");

  Ring p = Ring::parse("product:(zmod:2,zmod:3)");
  auto s = definable_set(Formula::parse("params z w . z = 0 | w = 0"), p);
  auto v = is_product_set(s);
  if (s.size() != 11) o.fail("axes over Z/2 x Z/3 has " + std::to_string(s.size()) + " points");
  if (v.is_product) {
    o.fail("is_product_set returned PRODUCT");
  } else {
    bool recombined = s.contains(v.first) && s.contains(v.second) && !s.contains(v.missing);
    for (std::size_t k = 0; k < 2; ++k) {
      recombined &= p.split(v.missing[k]).first == p.split(v.first[k]).first;
      recombined &= p.split(v.missing[k]).second == p.split(v.second[k]).second;
    }
    if (!recombined) o.fail("witness is not a mixed recombination");
  }
  // ((1,0),(1,0)) and ((0,1),(0,1)) in R1^2 x R2^2 are z = (1,1), w = (0,0)
  // and z = (0,0), w = (1,1); their mix ((1,0),(0,1)) is z = (1,0), w = (0,1).
  Element zz = p.join(Element{0}, Element{0}), oo = p.join(Element{1}, Element{1});
  Element oz = p.join(Element{1}, Element{0}), zo = p.join(Element{0}, Element{1});
  if (!s.contains({oo, zz}) || !s.contains({zz, oo}) || s.contains({oz, zo})) o.fail("triple pattern not reproduced");
  if (o.pass) {
    auto fmt = [&](const Tuple& t) { return "(" + p.format(t[0]) + "," + p.format(t[1]) + ")"; };
    o.detail = "Z/6: " + std::to_string(got.size()) + " points > 11, (3,2) included; NOT_PRODUCT with " +
               fmt(v.first) + " + " + fmt(v.second) + " -> " + fmt(v.missing);
  }
  return o;
}

// 5. Origin gadget facts.
Outcome gadget_facts() {
  Outcome o;
  Polynomial g2 = Polynomial::parse("x^2 + x*y + y^2"), g3 = Polynomial::parse("x^2 + y^2");
  if (verify_origin_gadget(g2, Ring::zmod(2)).status != GadgetStatus::kVerified) o.fail("x^2+xy+y^2 over Z/2");
  if (naive::zero_count(g2, {"x", "y"}, 2) != 1) o.fail("x^2+xy+y^2 has extra zeros over Z/2");
  if (verify_origin_gadget(g3, Ring::zmod(3)).status != GadgetStatus::kVerified) o.fail("x^2+y^2 over Z/3");
  auto c5 = verify_origin_gadget(g3, Ring::zmod(5));
  if (c5.status != GadgetStatus::kRefuted || c5.witness.size() != 2) {
    o.fail("x^2+y^2 over Z/5 not refuted");
  } else {
    long long a = c5.witness[0].code, b = c5.witness[1].code;
    if ((a == 0 && b == 0) || (a * a + b * b) % 5 != 0) o.fail("bad refutation witness");
  }
  OriginGadget o2{g2, "x", "y", verify_origin_gadget(g2, Ring::zmod(2))};
  OriginGadget o3{g3, "x", "y", verify_origin_gadget(g3, Ring::zmod(3))};
  OriginGadget o6 = crt_combine_origin(o2, Ring::zmod(2), o3, Ring::zmod(3));
  if (o6.check.status != GadgetStatus::kVerified) o.fail("CRT gadget not verified");
  if (naive::zero_count(o6.g, {"x", "y"}, 6) != 1) o.fail("CRT gadget zero count");
  if (o.pass) {
    o.detail = "Z/2, Z/3 VERIFIED; Z/5 REFUTED at (" + std::to_string(c5.witness[0].code) + "," +
               std::to_string(c5.witness[1].code) + "); Z/6 " + o6.g.to_string() + " VERIFIED, 1 zero of 36";
  }
  return o;
}

// 6. Bounded checks over the integers.
Outcome integer_heuristics() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto s = definable_set(Formula::parse("params x y . x^2 + y^2 = 0"), Ring::zbox(100));
  if (s.size() != 1 || s.tuples[0] != Tuple{Element{0}, Element{0}}) o.fail("x^2+y^2 has nonzero solutions");
  if (s.exhaustive) o.fail("zbox set marked exhaustive");
  GadgetSet gs = default_gadgets(Ring::zbox(50));
  if (!gs.nonzero || gs.nonzero->check.status != GadgetStatus::kHeuristic) o.fail("nonzero gadget not HEURISTIC");
  if (!gs.origin || gs.origin->check.status != GadgetStatus::kHeuristic) o.fail("origin gadget not HEURISTIC");
  if (gs.nonzero) {
    SearchOptions so;
    so.param_box = 50;
    auto nz = definable_set(gs.nonzero->definition, Ring::zbox(50), so);
    for (long long n = -50; n <= 50; ++n) {
      // Independent check: n = (2x - 1)(3y - 1) for some |x|, |y| <= 200.
      bool found = false;
      for (long long x = -200; x <= 200 && !found; ++x) {
        long long a = 2 * x - 1, b = n / a;
        found = n % a == 0 && (b + 1) % 3 == 0 && (b + 1) / 3 >= -200 && (b + 1) / 3 <= 200;
      }
      if (found != (n != 0)) o.fail("independent check at " + std::to_string(n));
      if (nz.contains({Element{n}}) != (n != 0)) o.fail("gadget at " + std::to_string(n));
    }
    if (nz.witness_box != 200) o.fail("witness box " + std::to_string(nz.witness_box));
  }
  double secs = seconds_since(t0);
  if (secs > 10) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = "x^2+y^2: only (0,0) in [-100,100]^2; (2x-1)(3y-1) hits every 0<|n|<=50, never 0, witness box 200; "
               "HEURISTIC; " + std::to_string(secs).substr(0, 5) + " s";
  }
  return o;
}

// 7. Output classes never exceed targets; the class order is a chain.
Outcome classification_chain() {
  Outcome o;
  const std::array<SyntacticClass, 4> chain = {SyntacticClass::kSingleEquation, SyntacticClass::kConjunctive,
                                               SyntacticClass::kPositiveExistential, SyntacticClass::kExistential};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (class_le(chain[i], chain[j]) != (i <= j)) o.fail("class_le is not the chain order");
    }
  }
  const std::array<const char*, 4> examples = {"params t . t = 0", "params t s . t = 0 & s = 0",
                                               "params t s . t = 0 | s = 0", "params t . t != 0"};
  for (std::size_t i = 0; i < 4; ++i) {
    if (classify(Formula::parse(examples[i])) != chain[i]) o.fail(std::string("classify ") + examples[i]);
  }
  std::size_t checked = 0;
  auto corpus = acceptance_corpus();
  for (std::int64_t n : kRings) {
    Ring r = Ring::zmod(n);
    GadgetSet gs = default_gadgets(r);
    for (const auto& f : corpus) {
      for (auto target : chain) {
        if (target == SyntacticClass::kSingleEquation && !gs.origin) continue;
        CompileResult res = compile(f, r, gs, target);
        if (!class_le(classify(res.output), target)) o.fail(f.to_string() + " above target");
        for (const auto& t : res.traces) {
          ++checked;
          if (!class_le(t.output_class, t.target)) o.fail(t.pass + " on " + f.to_string() + " above its target");
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " pass traces within target; chain order and examples hold";
  return o;
}

// 8. Same inputs and seed, byte-identical reports apart from timing.
Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "dioph_acceptance";
  fs::create_directories(dir);
  auto run_to = [&](std::vector<std::string> args, const fs::path& json) {
    args.insert(args.begin(), "dioph");
    args.push_back("--json");
    args.push_back(json.string());
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    std::ifstream in(json);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j = Json::parse(ss.str());
    j.erase("timing");
    return j.dump();
  };
  std::vector<std::vector<std::string>> jobs;
  for (const char* ring : {"zmod:2", "zmod:3", "zmod:5", "zmod:6", "zmod:9"}) {
    jobs.push_back({"corpus", "--ring", ring, "--seed", "20260101", "--count", "10"});
  }
  jobs.push_back({"compile", "-e", "params t . t != 0 | t - 1 = 0", "--ring", "zmod:5"});
  jobs.push_back({"compile", "-e", "params t . t != 0", "--ring", "zbox:20"});
  std::size_t k = 0;
  for (const auto& job : jobs) {
    std::string a = run_to(job, dir / ("a" + std::to_string(k) + ".json"));
    std::string b = run_to(job, dir / ("b" + std::to_string(k) + ".json"));
    if (a != b) o.fail("report " + std::to_string(k) + " differs");
    ++k;
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(jobs.size()) + " reports identical across two runs (timing removed)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 pipeline soundness", pipeline_soundness}, {"2 fold correctness", fold_correctness},
      {"3 union encoding", union_counts},           {"4 disconnected failure", disconnected_failure},
      {"5 gadget facts", gadget_facts},             {"6 integer heuristics", integer_heuristics},
      {"7 classification chain", classification_chain}, {"8 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
