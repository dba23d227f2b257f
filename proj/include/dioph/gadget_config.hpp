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

// Gadget configuration files. One section per ring descriptor:
//
//   # comment
//   [zmod:6]
//   origin = "x^2 + 3*x*y + y^2"
//   origin_status = "VERIFIED"
//   nonzero = "params t . exists x . t*x - 3 = 0 | t*x - 2 = 0"
//   note = "axes: none exists for this ring"
//
// Recognised keys are origin, axes, nonzero, their *_status companions
// and note (repeatable). The origin polynomial is written in x and y.

#ifndef DIOPH_GADGET_CONFIG_HPP_
#define DIOPH_GADGET_CONFIG_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/formula.hpp"
#include "dioph/gadgets.hpp"
#include "dioph/poly.hpp"
#include "dioph/ring.hpp"

namespace dioph {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error("gadget config line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using GadgetConfig = std::map<std::string, GadgetSet>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::string unquote(std::string_view v, std::size_t line) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') throw ConfigError(line, "value must be a quoted string");
  std::string out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] == '\\') {
      if (i + 2 >= v.size()) throw ConfigError(line, "dangling escape");
      ++i;
      if (v[i] != '"' && v[i] != '\\') throw ConfigError(line, "unknown escape");
    } else if (v[i] == '"') {
      throw ConfigError(line, "unescaped quote");
    }
    out += v[i];
  }
  return out;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Parses a config. Statuses are taken as written (UNVERIFIED when absent);
/// call reverify() to recompute them.
inline GadgetConfig parse_gadget_config(std::string_view text) {
  GadgetConfig cfg;
  GadgetSet* cur = nullptr;
  std::map<std::string, std::string> pending_status;
  std::size_t line_no = 0;
  auto flush_status = [&](std::size_t line) {
    if (cur == nullptr) return;
    for (const auto& [kind, st] : pending_status) {
      GadgetStatus s;
      try {
        s = parse_status(st);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(line, e.what());
      }
      if (kind == "origin" && cur->origin) cur->origin->check.status = s;
      else if (kind == "axes" && cur->axes) cur->axes->check.status = s;
      else if (kind == "nonzero" && cur->nonzero) cur->nonzero->check.status = s;
      else throw ConfigError(line, kind + "_status without " + kind);
    }
    pending_status.clear();
  };
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = detail::trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      flush_status(line_no);
      std::string name(detail::trim(line.substr(1, line.size() - 2)));
      try {
        name = Ring::parse(name).descriptor();
      } catch (const std::exception& e) {
        throw ConfigError(line_no, e.what());
      }
      if (cfg.count(name) != 0) throw ConfigError(line_no, "duplicate section [" + name + "]");
      cur = &cfg[name];
      cur->ring = name;
      continue;
    }
    if (cur == nullptr) throw ConfigError(line_no, "entry outside a section");
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = \"value\"");
    std::string key(detail::trim(line.substr(0, eq)));
    std::string value = detail::unquote(detail::trim(line.substr(eq + 1)), line_no);
    try {
      if (key == "origin") {
        OriginGadget og;
        og.g = Polynomial::parse(value);
        for (const auto& v : og.g.variables()) {
          if (v != "x" && v != "y") throw ConfigError(line_no, "origin polynomial must use only x and y");
        }
        cur->origin = og;
      } else if (key == "axes") {
        cur->axes = AxesGadget{Formula::parse(value), {}};
        if (cur->axes->definition.params.size() != 2) throw ConfigError(line_no, "axes needs two parameters");
      } else if (key == "nonzero") {
        cur->nonzero = NonzeroGadget{Formula::parse(value), {}};
        if (cur->nonzero->definition.params.size() != 1) throw ConfigError(line_no, "nonzero needs one parameter");
      } else if (key == "origin_status" || key == "axes_status" || key == "nonzero_status") {
        pending_status[key.substr(0, key.size() - 7)] = value;
      } else if (key == "note") {
        cur->notes.push_back(value);
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ConfigError(line_no, std::string("bad ") + key + ": " + e.what());
    }
  }
  flush_status(line_no);
  return cfg;
}

inline std::string write_gadget_config(const std::vector<GadgetSet>& sets) {
  std::string out = "# dioph gadget configuration\n";
  for (const auto& gs : sets) {
    out += "\n[" + gs.ring + "]\n";
    if (gs.origin) {
      out += "origin = " + detail::quote(gs.origin->g.to_string()) + "\n";
      out += "origin_status = " + detail::quote(status_name(gs.origin->check.status)) + "\n";
    }
    if (gs.axes) {
      out += "axes = " + detail::quote(gs.axes->definition.to_string()) + "\n";
      out += "axes_status = " + detail::quote(status_name(gs.axes->check.status)) + "\n";
    }
    if (gs.nonzero) {
      out += "nonzero = " + detail::quote(gs.nonzero->definition.to_string()) + "\n";
      out += "nonzero_status = " + detail::quote(status_name(gs.nonzero->check.status)) + "\n";
    }
    for (const auto& n : gs.notes) out += "note = " + detail::quote(n) + "\n";
  }
  return out;
}

/// Recomputes every entry's status on `ring`.
inline void reverify(GadgetSet& gs, const Ring& ring, const GadgetOptions& opts = {}) {
  if (gs.origin) gs.origin->check = verify_origin(*gs.origin, ring, opts);
  if (gs.axes) gs.axes->check = verify_axes(gs.axes->definition, ring, opts);
  if (gs.nonzero) gs.nonzero->check = verify_nonzero(gs.nonzero->definition, ring, opts);
}

/// The section for `ring`, if any.
inline std::optional<GadgetSet> gadgets_for(const GadgetConfig& cfg, const Ring& ring) {
  auto it = cfg.find(ring.descriptor());
  if (it == cfg.end()) return std::nullopt;
  return it->second;
}

}  // namespace dioph

#endif  // DIOPH_GADGET_CONFIG_HPP_
