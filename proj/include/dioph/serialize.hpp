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

// JSON views of the library's values. Key order is fixed by nlohmann's
// sorted object map, so equal values always serialize to equal bytes.

#ifndef DIOPH_SERIALIZE_HPP_
#define DIOPH_SERIALIZE_HPP_

#include <string>

#include "json.hpp"

#include "dioph/formula.hpp"
#include "dioph/gadgets.hpp"
#include "dioph/oracle.hpp"
#include "dioph/passes.hpp"
#include "dioph/ring.hpp"

namespace dioph {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json element_json(const Ring& ring, Element e) {
  if (ring.kind() == Ring::Kind::kProduct) return ring.format(e);
  return e.code;
}

inline Json tuple_json(const Ring& ring, const Tuple& t) {
  Json a = Json::array();
  for (Element e : t) a.push_back(element_json(ring, e));
  return a;
}

inline Json to_json(const DefinableSet& s) {
  Json tuples = Json::array();
  for (const auto& t : s.tuples) tuples.push_back(tuple_json(s.ring, t));
  Json j{{"ring", s.ring.descriptor()},
         {"arity", s.arity},
         {"exhaustive", s.exhaustive},
         {"size", s.size()},
         {"tuples", tuples}};
  if (!s.ring.is_finite()) {
    j["param_box"] = s.param_box;
    j["witness_box"] = s.witness_box;
  }
  return j;
}

inline Json to_json(const Verdict& v, const Ring& ring) {
  Json j{{"verdict", verdict_name(v.kind)}};
  if (v.kind == VerdictKind::kDiffer) {
    j["witness"] = tuple_json(ring, v.witness);
    j["only_in"] = v.only_in;
    j["witness_values"] = tuple_json(ring, v.witness_values);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline Json to_json(const PassTrace& t) {
  return Json{{"pass", t.pass},
              {"input_class", class_name(t.input_class)},
              {"output_class", class_name(t.output_class)},
              {"target", class_name(t.target)},
              {"fresh_variables", t.fresh_variables},
              {"atoms_before", t.atoms_before},
              {"atoms_after", t.atoms_after},
              {"degree_before", t.degree_before},
              {"degree_after", t.degree_after},
              {"gadgets", t.gadgets}};
}

inline Json to_json(const GadgetCheck& c, const Ring* ring = nullptr) {
  Json j{{"status", status_name(c.status)}, {"ring", c.ring}};
  if (c.box != 0) j["box"] = c.box;
  if (c.status == GadgetStatus::kRefuted && ring != nullptr) j["witness"] = tuple_json(*ring, c.witness);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Json to_json(const GadgetSet& gs) {
  Json j{{"ring", gs.ring}, {"notes", gs.notes}};
  if (gs.origin) j["origin"] = Json{{"g", gs.origin->g.to_string()}, {"check", to_json(gs.origin->check)}};
  if (gs.axes) j["axes"] = Json{{"definition", gs.axes->definition.to_string()}, {"check", to_json(gs.axes->check)}};
  if (gs.nonzero) {
    j["nonzero"] = Json{{"definition", gs.nonzero->definition.to_string()}, {"check", to_json(gs.nonzero->check)}};
  }
  return j;
}

inline Json to_json(const Formula& f) {
  return Json{{"text", f.to_string()},
              {"class", class_name(classify(f))},
              {"params", f.params.size()},
              {"bound", f.bound.size()},
              {"atoms", f.atom_count()},
              {"degree", f.max_degree()}};
}

}  // namespace dioph

#endif  // DIOPH_SERIALIZE_HPP_
