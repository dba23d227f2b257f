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

// The dioph command line. run_cli() is the whole program minus main(), so
// tests can drive it with string streams.
//
// Exit codes:
//   0  success (compile: SOUND, HEURISTIC or verification off)
//   1  usage, I/O or ring descriptor error
//   2  formula or polynomial parse error
//   3  a required gadget is missing or unusable
//   4  verification failed (some stage DIFFERs)
//   5  verification inconclusive (search budget exhausted)

#ifndef DIOPH_TOOLS_CLI_APP_HPP_
#define DIOPH_TOOLS_CLI_APP_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dioph/dioph.hpp"

namespace dioph::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kMissingGadget = 3,
  kVerifyFailed = 4,
  kInconclusive = 5,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

inline Formula load_formula(const std::string& file, const std::string& inline_text) {
  if (!file.empty() && !inline_text.empty()) throw UsageError("give a formula file or -e, not both");
  if (file.empty() && inline_text.empty()) throw UsageError("no formula given (file argument or -e)");
  return Formula::parse(inline_text.empty() ? read_file(file) : inline_text);
}

class Stopwatch {
 public:
  double lap_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct BoxFlags {
  std::optional<std::int64_t> param_box;
  std::optional<std::int64_t> witness_box;
  std::int64_t witness_factor = 4;
  std::uint64_t budget = 0;
  unsigned threads = 1;

  SearchOptions search(const Ring& ring, std::int64_t default_box) const {
    SearchOptions o;
    if (!ring.is_finite()) o.param_box = param_box.value_or(std::min(default_box, ring.bound()));
    o.witness_box = witness_box;
    o.witness_factor = witness_factor;
    o.node_budget = budget;
    o.threads = threads;
    return o;
  }
};

inline void add_box_flags(CLI::App* cmd, BoxFlags& b) {
  cmd->add_option("--param-box", b.param_box, "zbox parameter window [-B, B]")->check(CLI::PositiveNumber);
  cmd->add_option("--witness-box", b.witness_box, "zbox witness window (default 4 x parameter window)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--budget", b.budget, "search node budget per query, 0 for none");
  cmd->add_option("--threads", b.threads, "oracle worker threads, 0 for all cores");
}

inline void write_json(const std::string& path, const Json& j) {
  if (!path.empty()) write_file(path, j.dump(2) + "\n");
}

inline GadgetSet obtain_gadgets(const Ring& ring, const std::string& config_path, const GadgetOptions& gopts,
                                bool trust) {
  if (config_path.empty()) return default_gadgets(ring, gopts);
  GadgetConfig cfg = parse_gadget_config(read_file(config_path));
  auto gs = gadgets_for(cfg, ring);
  if (!gs) {
    GadgetSet empty;
    empty.ring = ring.descriptor();
    empty.notes.push_back("no section for this ring in " + config_path);
    return empty;
  }
  if (!trust) reverify(*gs, ring, gopts);
  return *gs;
}

inline SyntacticClass parse_target(const std::string& t) {
  if (t == "pe") return SyntacticClass::kPositiveExistential;
  if (t == "conj") return SyntacticClass::kConjunctive;
  return SyntacticClass::kSingleEquation;
}

// Compile + stage verification, shared by `compile` and `corpus`.
struct PipelineRun {
  Json report;
  int code = kOk;
};

inline PipelineRun run_pipeline(const Formula& f, const Ring& ring, const GadgetSet& gadgets, SyntacticClass target,
                                const std::string& verify_mode, const SearchOptions& sopts, bool allow_unverified,
                                Json* timing) {
  PipelineRun run;
  Json& r = run.report;
  r["input"] = to_json(f);
  r["target"] = class_name(target);
  Stopwatch sw;
  CompileResult res;
  try {
    res = compile(f, ring, gadgets, target, PassOptions{allow_unverified});
  } catch (const MissingGadgetError& e) {
    Json items = Json::array();
    for (const auto& it : e.items()) items.push_back(Json{{"pass", it.pass}, {"gadget", it.kind}, {"reason", it.reason}});
    r["status"] = "MISSING_GADGET";
    r["missing"] = items;
    run.code = kMissingGadget;
    return run;
  }
  if (timing != nullptr) (*timing)["compile_ms"] = sw.lap_ms();

  Json traces = Json::array();
  for (const auto& t : res.traces) traces.push_back(to_json(t));
  r["traces"] = traces;

  bool any_differ = false, any_inconclusive = false, any_heuristic = false;
  Json stages = Json::array();
  for (std::size_t i = 1; i < res.stages.size(); ++i) {
    Json st{{"name", res.stages[i].name}, {"formula", to_json(res.stages[i].formula)}};
    if (verify_mode != "off") {
      Verdict v = sets_equal(f, res.stages[i].formula, ring, sopts);
      st["verdict"] = to_json(v, ring);
      any_differ |= v.kind == VerdictKind::kDiffer;
      any_inconclusive |= v.kind == VerdictKind::kInconclusive;
      any_heuristic |= v.kind == VerdictKind::kHeuristicEqual;
    }
    stages.push_back(st);
  }
  r["stages"] = stages;
  r["output"] = to_json(res.output);
  if (timing != nullptr) (*timing)["verify_ms"] = sw.lap_ms();

  std::string status;
  if (verify_mode == "off") {
    status = "UNVERIFIED";
  } else if (any_differ) {
    status = "UNSOUND";
    run.code = kVerifyFailed;
  } else if (any_inconclusive) {
    status = "INCONCLUSIVE";
    run.code = kInconclusive;
  } else if (any_heuristic || !ring.is_finite()) {
    status = "HEURISTIC";
  } else {
    status = "SOUND";
  }
  r["status"] = status;
  return run;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower existential formulas over a ring to one polynomial equation and check every step."};
  app.name("dioph");
  app.require_subcommand(1);

  std::string ring_text, gadgets_path, target = "single", verify_mode, json_path, out_path, expr, file;
  std::string file2, expr2;
  std::uint64_t seed = 20260101;
  bool count_only = false, allow_unverified = false, fixed_only = false, trust_gadgets = false;
  unsigned max_degree = 2;
  std::size_t corpus_count = 10;
  std::optional<std::int64_t> gadget_box;
  detail::BoxFlags box;

  auto add_ring = [&](CLI::App* c) { c->add_option("--ring", ring_text, "ring descriptor, e.g. zmod:5")->required(); };
  auto add_gadget_flags = [&](CLI::App* c) {
    c->add_option("--gadgets", gadgets_path, "gadget configuration file (default: built-in gadgets)");
    c->add_option("--max-degree", max_degree, "origin gadget search degree")->check(CLI::Range(1u, 6u));
    c->add_option("--gadget-box", gadget_box, "zbox window for gadget checks (default: the ring bound)")
        ->check(CLI::PositiveNumber);
    c->add_flag("--allow-unverified", allow_unverified, "let passes use UNVERIFIED gadgets");
    c->add_flag("--trust-gadgets", trust_gadgets, "take statuses in --gadgets as written instead of re-checking");
  };

  auto* compile_cmd = app.add_subcommand("compile", "lower a formula and verify each stage");
  compile_cmd->add_option("file", file, "formula file");
  compile_cmd->add_option("-e,--expr", expr, "formula text");
  add_ring(compile_cmd);
  add_gadget_flags(compile_cmd);
  compile_cmd->add_option("--target", target, "target class")->check(CLI::IsMember({"pe", "conj", "single"}));
  compile_cmd->add_option("--verify", verify_mode, "stage verification mode")
      ->check(CLI::IsMember({"exhaustive", "heuristic", "off"}));
  compile_cmd->add_option("--json", json_path, "write the JSON report here");
  compile_cmd->add_option("-o,--output", out_path, "write the final formula here");
  detail::add_box_flags(compile_cmd, box);

  auto* find_cmd = app.add_subcommand("find-gadgets", "construct and check the gadgets for a ring");
  add_ring(find_cmd);
  find_cmd->add_option("--max-degree", max_degree, "origin gadget search degree")->check(CLI::Range(1u, 6u));
  find_cmd->add_option("--gadget-box", gadget_box, "zbox window for gadget checks")->check(CLI::PositiveNumber);
  find_cmd->add_option("-o,--output", out_path, "write the gadget configuration here");
  find_cmd->add_option("--json", json_path, "write a JSON summary here");

  auto* eval_cmd = app.add_subcommand("eval", "print the set a formula defines");
  eval_cmd->add_option("file", file, "formula file");
  eval_cmd->add_option("-e,--expr", expr, "formula text");
  add_ring(eval_cmd);
  eval_cmd->add_flag("--count", count_only, "print only the number of tuples");
  eval_cmd->add_option("--json", json_path, "write the set as JSON here");
  detail::add_box_flags(eval_cmd, box);

  auto* verify_cmd = app.add_subcommand("verify", "compare the sets defined by two formulas");
  verify_cmd->add_option("first", file, "first formula file");
  verify_cmd->add_option("second", file2, "second formula file");
  verify_cmd->add_option("-e,--expr", expr, "first formula text");
  verify_cmd->add_option("-f,--expr2", expr2, "second formula text");
  add_ring(verify_cmd);
  verify_cmd->add_option("--json", json_path, "write the verdict as JSON here");
  detail::add_box_flags(verify_cmd, box);

  auto* corpus_cmd = app.add_subcommand("corpus", "print the test corpus, or run it through the pipeline");
  corpus_cmd->add_option("--seed", seed, "seed of the random part");
  corpus_cmd->add_option("--count", corpus_count, "number of random formulas");
  corpus_cmd->add_flag("--fixed-only", fixed_only, "skip the random part");
  corpus_cmd->add_option("--ring", ring_text, "run every formula through the pipeline on this ring");
  add_gadget_flags(corpus_cmd);
  corpus_cmd->add_option("--target", target, "target class")->check(CLI::IsMember({"pe", "conj", "single"}));
  corpus_cmd->add_option("--json", json_path, "write the JSON report here");
  detail::add_box_flags(corpus_cmd, box);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    GadgetOptions gopts;
    gopts.max_degree = max_degree;
    gopts.box = gadget_box;
    gopts.witness_factor = box.witness_factor;

    if (*compile_cmd) {
      detail::Stopwatch sw;
      Json timing;
      Ring ring = Ring::parse(ring_text);
      if (verify_mode.empty()) verify_mode = ring.is_finite() ? "exhaustive" : "heuristic";
      if (verify_mode == "exhaustive" && !ring.is_finite()) {
        throw UsageError("--verify exhaustive needs a finite ring");
      }
      Formula f = detail::load_formula(file, expr);
      f.validate();
      timing["parse_ms"] = sw.lap_ms();
      GadgetSet gs = detail::obtain_gadgets(ring, gadgets_path, gopts, trust_gadgets);
      timing["gadgets_ms"] = sw.lap_ms();
      Json report{{"schema_version", kSchemaVersion}, {"command", "compile"}, {"ring", ring.descriptor()},
                  {"verify", verify_mode}, {"gadgets", to_json(gs)}};
      auto run = detail::run_pipeline(f, ring, gs, detail::parse_target(target), verify_mode, box.search(ring, 3),
                                      allow_unverified, &timing);
      report.update(run.report);
      report["timing"] = timing;
      detail::write_json(json_path, report);
      if (run.code == kMissingGadget) {
        for (const auto& m : report["missing"]) {
          err << "missing gadget: " << m["pass"].get<std::string>() << " needs " << m["gadget"].get<std::string>()
              << " (" << m["reason"].get<std::string>() << ")\n";
        }
        for (const auto& n : gs.notes) err << "note: " << n << "\n";
        return run.code;
      }
      std::string final_text = report["output"]["text"].get<std::string>();
      if (!out_path.empty()) detail::write_file(out_path, final_text + "\n");
      out << final_text << "\n";
      err << "status: " << report["status"].get<std::string>() << "\n";
      return run.code;
    }

    if (*find_cmd) {
      Ring ring = Ring::parse(ring_text);
      GadgetSet gs = default_gadgets(ring, gopts);
      std::string cfg = write_gadget_config({gs});
      if (!out_path.empty()) {
        detail::write_file(out_path, cfg);
      } else {
        out << cfg;
      }
      detail::write_json(json_path, Json{{"schema_version", kSchemaVersion}, {"command", "find-gadgets"},
                                         {"gadgets", to_json(gs)}});
      return kOk;
    }

    if (*eval_cmd) {
      Ring ring = Ring::parse(ring_text);
      Formula f = detail::load_formula(file, expr);
      DefinableSet s = definable_set(f, ring, box.search(ring, ring.is_finite() ? 0 : ring.bound()));
      if (count_only) {
        out << s.size() << "\n";
      } else {
        out << s.to_text();
      }
      Json j = to_json(s);
      j["schema_version"] = kSchemaVersion;
      j["formula"] = f.to_string();
      detail::write_json(json_path, j);
      return kOk;
    }

    if (*verify_cmd) {
      Ring ring = Ring::parse(ring_text);
      Formula f1 = detail::load_formula(file, expr);
      Formula f2 = detail::load_formula(file2, expr2);
      Verdict v = sets_equal(f1, f2, ring, box.search(ring, ring.is_finite() ? 0 : std::min<std::int64_t>(ring.bound(), 10)));
      out << verdict_name(v.kind);
      if (v.kind == VerdictKind::kDiffer) {
        out << " only in " << (v.only_in == 1 ? "first" : "second") << ":";
        for (Element e : v.witness) out << " " << ring.format(e);
      }
      out << "\n";
      Json j = to_json(v, ring);
      j["schema_version"] = kSchemaVersion;
      j["command"] = "verify";
      detail::write_json(json_path, j);
      if (v.kind == VerdictKind::kDiffer) return kVerifyFailed;
      if (v.kind == VerdictKind::kInconclusive) return kInconclusive;
      return kOk;
    }

    if (*corpus_cmd) {
      std::vector<Formula> formulas = fixed_corpus();
      if (!fixed_only) {
        RandomCorpusOptions ro;
        ro.count = corpus_count;
        for (auto& f : random_corpus(seed, ro)) formulas.push_back(std::move(f));
      }
      if (ring_text.empty()) {
        for (const auto& f : formulas) out << f.to_string() << "\n";
        return kOk;
      }
      Ring ring = Ring::parse(ring_text);
      Json timing;
      detail::Stopwatch sw;
      GadgetSet gs = detail::obtain_gadgets(ring, gadgets_path, gopts, trust_gadgets);
      std::string mode = ring.is_finite() ? "exhaustive" : "heuristic";
      Json runs = Json::array();
      int worst = kOk;
      std::size_t sound = 0;
      for (const auto& f : formulas) {
        auto run = detail::run_pipeline(f, ring, gs, detail::parse_target(target), mode, box.search(ring, 3),
                                        allow_unverified, nullptr);
        runs.push_back(run.report);
        std::string st = run.report["status"].get<std::string>();
        sound += st == "SOUND" || st == "HEURISTIC";
        out << st << "  " << f.to_string() << "\n";
        if (run.code == kVerifyFailed || (run.code != kOk && worst != kVerifyFailed)) worst = run.code;
      }
      timing["total_ms"] = sw.lap_ms();
      Json report{{"schema_version", kSchemaVersion}, {"command", "corpus"},  {"ring", ring.descriptor()},
                  {"seed", seed},                     {"fixed_only", fixed_only}, {"gadgets", to_json(gs)},
                  {"runs", runs},                     {"timing", timing}};
      detail::write_json(json_path, report);
      err << sound << "/" << formulas.size() << " runs verified\n";
      return worst;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const UnboundVariableError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace dioph::cli

#endif  // DIOPH_TOOLS_CLI_APP_HPP_
