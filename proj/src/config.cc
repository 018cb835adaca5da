// Copyright 2026 The Caplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "caplab/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "caplab/error.h"
#include "caplab/format.h"
#include "json.hpp"

namespace caplab::config {
namespace {

using nlohmann::json;

// Walks a parsed document, records every problem, and keeps going.
class Reader {
 public:
  void Fail(ErrorKind kind, const std::string& message) {
    issues_.emplace_back(kind, message);
  }

  bool Object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    Fail(ErrorKind::kSchemaError, path + ": expected an object");
    return false;
  }

  // Flags unknown and missing fields; returns false on any.
  bool Fields(const json& j, const std::string& path,
              std::initializer_list<const char*> allowed,
              std::initializer_list<const char*> required) {
    bool ok = true;
    for (const auto& item : j.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) {
            return item.key() == a;
          })) {
        Fail(ErrorKind::kSchemaError,
             path + ": unknown field '" + item.key() + "'");
        ok = false;
      }
    }
    for (const char* r : required) {
      if (!j.contains(r)) {
        Fail(ErrorKind::kSchemaError,
             path + ": missing field '" + std::string(r) + "'");
        ok = false;
      }
    }
    return ok;
  }

  std::optional<double> Number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      Fail(ErrorKind::kSchemaError, path + ": expected a number");
      return std::nullopt;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      Fail(ErrorKind::kInvariantError, path + ": must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::int64_t> Integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      Fail(ErrorKind::kSchemaError, path + ": expected an integer");
      return std::nullopt;
    }
    return j.get<std::int64_t>();
  }

  std::optional<std::uint64_t> Unsigned(const json& j,
                                        const std::string& path) {
    if (!j.is_number_unsigned()) {
      Fail(ErrorKind::kSchemaError, path + ": expected an unsigned integer");
      return std::nullopt;
    }
    return j.get<std::uint64_t>();
  }

  std::optional<std::string> String(const json& j, const std::string& path) {
    if (!j.is_string()) {
      Fail(ErrorKind::kSchemaError, path + ": expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::optional<std::vector<double>> Numbers(const json& j,
                                             const std::string& path) {
    if (!j.is_array()) {
      Fail(ErrorKind::kSchemaError, path + ": expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t k = 0; k < j.size(); ++k) {
      const auto v = Number(j[k], path + "[" + std::to_string(k) + "]");
      ok = ok && v.has_value();
      if (v) out.push_back(*v);
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::vector<std::vector<double>>> Matrix(
      const json& j, const std::string& path) {
    if (!j.is_array()) {
      Fail(ErrorKind::kSchemaError, path + ": expected an array of rows");
      return std::nullopt;
    }
    std::vector<std::vector<double>> out;
    bool ok = true;
    for (std::size_t k = 0; k < j.size(); ++k) {
      auto row = Numbers(j[k], path + "[" + std::to_string(k) + "]");
      ok = ok && row.has_value();
      if (row) out.push_back(std::move(*row));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::vector<std::string>> Strings(const json& j,
                                                  const std::string& path) {
    if (!j.is_array()) {
      Fail(ErrorKind::kSchemaError, path + ": expected an array of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    bool ok = true;
    for (std::size_t k = 0; k < j.size(); ++k) {
      auto s = String(j[k], path + "[" + std::to_string(k) + "]");
      ok = ok && s.has_value();
      if (s) out.push_back(std::move(*s));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::vector<int>> Sizes(const json& j,
                                        const std::string& path) {
    if (!j.is_array()) {
      Fail(ErrorKind::kSchemaError, path + ": expected an array of integers");
      return std::nullopt;
    }
    std::vector<int> out;
    bool ok = true;
    for (std::size_t k = 0; k < j.size(); ++k) {
      const auto v = Integer(j[k], path + "[" + std::to_string(k) + "]");
      ok = ok && v.has_value();
      if (v) out.push_back(static_cast<int>(*v));
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::size_t count() const { return issues_.size(); }

  [[noreturn]] void Raise() const {
    ErrorKind kind = ErrorKind::kInvariantError;
    for (ErrorKind k : {ErrorKind::kReferenceError, ErrorKind::kSchemaError}) {
      for (const auto& issue : issues_) {
        if (issue.first == k) kind = k;
      }
    }
    std::string message = std::to_string(issues_.size()) +
                          " problem(s) in config:";
    for (const auto& [k, text] : issues_) {
      message += "\n  " + std::string(ErrorKindName(k)) + ": " + text;
    }
    throw Error(kind, message);
  }

 private:
  std::vector<std::pair<ErrorKind, std::string>> issues_;
};

void ReadSpaces(Reader& r, const json& j, Config& c) {
  if (!r.Object(j, "spaces")) return;
  for (const auto& [name, atoms] : j.items()) {
    const std::string path = "spaces." + name;
    auto labels = r.Strings(atoms, path);
    if (!labels) continue;
    try {
      FiniteSpace space(*labels);
      c.spaces[name] = std::move(*labels);
    } catch (const Error& e) {
      r.Fail(ErrorKind::kInvariantError, path + ": " + e.what());
    }
  }
}

void ReadUrns(Reader& r, const json& j, Config& c,
              const std::set<std::string>& declared_spaces,
              std::set<std::string>& broken) {
  if (!r.Object(j, "urns")) return;
  for (const auto& [name, body] : j.items()) {
    const std::string path = "urns." + name;
    const std::size_t before = r.count();
    if (!r.Object(body, path) ||
        !r.Fields(body, path, {"space", "members", "values"},
                  {"space", "members", "values"})) {
      broken.insert(name);
      continue;
    }
    UrnDef def;
    const auto space = r.String(body["space"], path + ".space");
    auto members = r.Matrix(body["members"], path + ".members");
    auto values = r.Numbers(body["values"], path + ".values");
    if (space) def.space = *space;
    if (members) def.members = std::move(*members);
    if (values) def.values = std::move(*values);
    if (space && !declared_spaces.contains(*space)) {
      r.Fail(ErrorKind::kReferenceError,
             path + ".space: unknown space '" + *space + "'");
    }
    if (r.count() == before && c.spaces.contains(def.space)) {
      const FiniteSpace s(c.spaces.at(def.space));
      if (def.members.empty()) {
        r.Fail(ErrorKind::kInvariantError, path + ".members: empty");
      }
      for (std::size_t k = 0; k < def.members.size(); ++k) {
        const std::string row = path + ".members[" + std::to_string(k) + "]";
        if (def.members[k].size() != s.size()) {
          r.Fail(ErrorKind::kInvariantError,
                 row + ": has " + std::to_string(def.members[k].size()) +
                     " entries for " + std::to_string(s.size()) + " atoms");
          continue;
        }
        try {
          ProbabilityVector(s, def.members[k]);
        } catch (const Error& e) {
          r.Fail(ErrorKind::kInvariantError, row + ": " + e.what());
        }
      }
      if (def.values.size() != s.size()) {
        r.Fail(ErrorKind::kInvariantError,
               path + ".values: has " + std::to_string(def.values.size()) +
                   " entries for " + std::to_string(s.size()) + " atoms");
      }
    }
    if (r.count() != before) broken.insert(name);
    c.urns[name] = std::move(def);
  }
}

void ReadPhis(Reader& r, const json& j, Config& c,
              std::set<std::string>& broken) {
  if (!r.Object(j, "phis")) return;
  for (const auto& [name, body] : j.items()) {
    const std::string path = "phis." + name;
    const std::size_t before = r.count();
    PhiDef def;
    if (!r.Object(body, path)) {
      broken.insert(name);
      continue;
    }
    def.bivariate = body.contains("table");
    if (def.bivariate) {
      if (r.Fields(body, path, {"x", "y", "table"}, {"x", "y", "table"})) {
        auto x = r.Numbers(body["x"], path + ".x");
        auto y = r.Numbers(body["y"], path + ".y");
        auto t = r.Matrix(body["table"], path + ".table");
        if (x && y && t) {
          def.x = std::move(*x);
          def.y = std::move(*y);
          def.table = std::move(*t);
          if (def.table.size() != def.x.size()) {
            r.Fail(ErrorKind::kInvariantError,
                   path + ".table: needs one row per x point");
          }
          for (std::size_t k = 0; k < def.table.size(); ++k) {
            if (def.table[k].size() != def.y.size()) {
              r.Fail(ErrorKind::kInvariantError,
                     path + ".table[" + std::to_string(k) +
                         "]: needs one entry per y point");
            }
          }
        }
      }
    } else if (r.Fields(body, path, {"points", "values"},
                        {"points", "values"})) {
      auto points = r.Numbers(body["points"], path + ".points");
      auto values = r.Numbers(body["values"], path + ".values");
      if (points && values) {
        def.points = std::move(*points);
        def.values = std::move(*values);
        if (def.points.size() != def.values.size()) {
          r.Fail(ErrorKind::kInvariantError,
                 path + ": points and values differ in length");
        }
      }
    }
    for (const auto* axis : {&def.points, &def.x, &def.y}) {
      std::vector<double> sorted = *axis;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        r.Fail(ErrorKind::kInvariantError, path + ": repeated point");
      }
    }
    if (r.count() != before) broken.insert(name);
    c.phis[name] = std::move(def);
  }
}

void ReadModels(Reader& r, const json& j, Config& c,
                const std::set<std::string>& broken_urns,
                const std::set<std::string>& broken_phis) {
  if (!r.Object(j, "models")) return;
  for (const auto& [name, body] : j.items()) {
    const std::string path = "models." + name;
    if (!r.Object(body, path) ||
        !r.Fields(body, path, {"urns", "joint", "phis", "peng_phi"},
                  {"urns"})) {
      continue;
    }
    const std::size_t before = r.count();
    ModelDef def;
    if (auto urns = r.Strings(body["urns"], path + ".urns")) {
      def.urns = std::move(*urns);
    }
    if (body.contains("joint")) {
      if (auto joint = r.Matrix(body["joint"], path + ".joint")) {
        def.joint = std::move(*joint);
      }
    }
    if (body.contains("phis")) {
      if (auto phis = r.Strings(body["phis"], path + ".phis")) {
        def.phis = std::move(*phis);
      }
    }
    if (body.contains("peng_phi")) {
      if (auto p = r.String(body["peng_phi"], path + ".peng_phi")) {
        def.peng_phi = std::move(*p);
      }
    }
    if (def.urns.empty() && r.count() == before) {
      r.Fail(ErrorKind::kInvariantError, path + ".urns: empty");
    }
    bool resolvable = r.count() == before;
    for (const auto& u : def.urns) {
      if (!c.urns.contains(u)) {
        r.Fail(ErrorKind::kReferenceError,
               path + ".urns: unknown urn '" + u + "'");
      }
      resolvable = resolvable && c.urns.contains(u) && !broken_urns.contains(u);
    }
    std::vector<std::string> phi_refs = def.phis;
    if (!def.peng_phi.empty()) phi_refs.push_back(def.peng_phi);
    for (const auto& p : phi_refs) {
      if (!c.phis.contains(p)) {
        r.Fail(ErrorKind::kReferenceError,
               path + ": unknown phi '" + p + "'");
      }
      resolvable = resolvable && c.phis.contains(p) && !broken_phis.contains(p);
    }
    c.models[name] = def;
    if (!resolvable) continue;
    try {
      BuildModel(c, name);
      if (!def.phis.empty()) BuildPhis(c, name);
      if (!def.peng_phi.empty()) BuildPengPhi(c, name);
    } catch (const Error& e) {
      r.Fail(ErrorKind::kInvariantError, path + ": " + e.what());
    }
  }
}

void ReadWlln(Reader& r, const json& j, Config& c) {
  if (!r.Object(j, "wlln") ||
      !r.Fields(j, "wlln", {"scenarios", "exact"}, {})) {
    return;
  }
  if (j.contains("scenarios")) {
    const json& list = j["scenarios"];
    if (!list.is_array()) {
      r.Fail(ErrorKind::kSchemaError, "wlln.scenarios: expected an array");
    } else {
      std::set<std::string> names;
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string path = "wlln.scenarios[" + std::to_string(k) + "]";
        const json& s = list[k];
        if (!r.Object(s, path) ||
            !r.Fields(s, path,
                      {"name", "mean_lo", "mean_hi", "sigma_lo", "sigma_hi",
                       "n_list", "reps", "epsilon", "strategy", "seed"},
                      {"name", "mean_lo", "mean_hi", "sigma_lo", "sigma_hi",
                       "n_list", "reps", "epsilon", "strategy"})) {
          continue;
        }
        const std::size_t before = r.count();
        wlln::Scenario sc;
        auto take = [&](const char* key, double& out) {
          if (auto v = r.Number(s[key], path + "." + key)) out = *v;
        };
        if (auto v = r.String(s["name"], path + ".name")) sc.name = *v;
        take("mean_lo", sc.mean_lo);
        take("mean_hi", sc.mean_hi);
        take("sigma_lo", sc.sigma_lo);
        take("sigma_hi", sc.sigma_hi);
        take("epsilon", sc.epsilon);
        if (auto v = r.Sizes(s["n_list"], path + ".n_list")) sc.n_list = *v;
        if (auto v = r.Integer(s["reps"], path + ".reps")) {
          if (*v < 1) {
            r.Fail(ErrorKind::kInvariantError, path + ".reps: must be >= 1");
          } else {
            sc.reps = static_cast<std::size_t>(*v);
          }
        }
        if (auto v = r.String(s["strategy"], path + ".strategy")) {
          try {
            sc.strategy = wlln::ParseStrategy(*v);
          } catch (const Error& e) {
            r.Fail(ErrorKind::kSchemaError, path + ".strategy: " + e.what());
          }
        }
        const bool seeded = s.contains("seed");
        sc.seed = c.seed.value_or(kDefaultSeed);
        if (seeded) {
          if (auto v = r.Unsigned(s["seed"], path + ".seed")) sc.seed = *v;
        }
        if (r.count() == before) {
          try {
            sc.Validate();
          } catch (const Error& e) {
            r.Fail(ErrorKind::kInvariantError, path + ": " + e.what());
          }
        }
        if (!names.insert(sc.name).second) {
          r.Fail(ErrorKind::kInvariantError,
                 path + ".name: duplicate scenario '" + sc.name + "'");
        }
        c.scenarios.push_back(std::move(sc));
        c.scenario_seeded.push_back(seeded);
      }
    }
  }
  if (j.contains("exact")) {
    const json& e = j["exact"];
    const std::string path = "wlln.exact";
    if (r.Object(e, path) && r.Fields(e, path, {"urn", "epsilon", "n_list"},
                                      {"urn", "epsilon", "n_list"})) {
      ExactDef def;
      if (auto v = r.String(e["urn"], path + ".urn")) def.urn = *v;
      if (auto v = r.Number(e["epsilon"], path + ".epsilon")) def.epsilon = *v;
      if (auto v = r.Sizes(e["n_list"], path + ".n_list")) def.n_list = *v;
      if (!def.urn.empty() && !c.urns.contains(def.urn)) {
        r.Fail(ErrorKind::kReferenceError,
               path + ".urn: unknown urn '" + def.urn + "'");
      }
      if (def.epsilon < 0.0) {
        r.Fail(ErrorKind::kInvariantError, path + ".epsilon: must be >= 0");
      }
      if (def.n_list.empty() ||
          std::any_of(def.n_list.begin(), def.n_list.end(),
                      [](int n) { return n < 1; })) {
        r.Fail(ErrorKind::kInvariantError,
               path + ".n_list: needs sample sizes >= 1");
      }
      c.exact = std::move(def);
    }
  }
}

void ReadOutput(Reader& r, const json& j, Config& c) {
  if (!r.Object(j, "output") ||
      !r.Fields(j, "output", {"dir", "format", "tolerance"}, {})) {
    return;
  }
  if (j.contains("dir")) {
    if (auto v = r.String(j["dir"], "output.dir")) c.output.dir = *v;
  }
  if (j.contains("format")) {
    if (auto v = r.String(j["format"], "output.format")) {
      if (*v != "csv" && *v != "svg" && *v != "both") {
        r.Fail(ErrorKind::kSchemaError,
               "output.format: expected csv, svg or both");
      } else {
        c.output.format = *v;
      }
    }
  }
  if (j.contains("tolerance")) {
    if (auto v = r.Number(j["tolerance"], "output.tolerance")) {
      if (*v <= 0.0) {
        r.Fail(ErrorKind::kInvariantError, "output.tolerance: must be > 0");
      } else {
        c.output.tolerance = *v;
      }
    }
  }
}

template <typename Map>
const typename Map::mapped_type& Lookup(const Map& map, const std::string& name,
                                        const char* what) {
  const auto it = map.find(name);
  if (it == map.end()) {
    throw Error(ErrorKind::kReferenceError,
                std::string("unknown ") + what + " '" + name + "'");
  }
  return it->second;
}

std::size_t PointIndex(const std::vector<double>& points, double value,
                       const std::string& phi) {
  const auto it = std::find(points.begin(), points.end(), value);
  if (it == points.end()) {
    throw Error(ErrorKind::kInvariantError,
                "phi '" + phi + "' is not defined at " + FormatNumber(value));
  }
  return static_cast<std::size_t>(it - points.begin());
}

}  // namespace

Config ParseConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  Reader r;
  Config c;
  if (!r.Object(doc, "document")) r.Raise();
  r.Fields(doc, "document",
           {"version", "seed", "spaces", "urns", "phis", "models", "wlln",
            "output"},
           {"version"});
  if (doc.contains("version")) {
    const auto v = r.Integer(doc["version"], "version");
    if (v && *v != 1) {
      r.Fail(ErrorKind::kSchemaError,
             "version: unsupported schema version " + std::to_string(*v));
    }
  }
  if (doc.contains("seed")) c.seed = r.Unsigned(doc["seed"], "seed");
  std::set<std::string> declared_spaces, broken_urns, broken_phis;
  if (doc.contains("spaces")) {
    ReadSpaces(r, doc["spaces"], c);
    if (doc["spaces"].is_object()) {
      for (const auto& item : doc["spaces"].items()) {
        declared_spaces.insert(item.key());
      }
    }
  }
  if (doc.contains("urns")) {
    ReadUrns(r, doc["urns"], c, declared_spaces, broken_urns);
  }
  if (doc.contains("phis")) ReadPhis(r, doc["phis"], c, broken_phis);
  if (doc.contains("models")) {
    ReadModels(r, doc["models"], c, broken_urns, broken_phis);
  }
  if (doc.contains("wlln")) ReadWlln(r, doc["wlln"], c);
  if (doc.contains("output")) ReadOutput(r, doc["output"], c);
  if (r.count() > 0) r.Raise();
  return c;
}

Config LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIoError, "cannot read config '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string WriteConfig(const Config& c) {
  json doc = json::object();
  doc["version"] = c.version;
  if (c.seed) doc["seed"] = *c.seed;
  if (!c.spaces.empty()) {
    doc["spaces"] = json::object();
    for (const auto& [name, atoms] : c.spaces) doc["spaces"][name] = atoms;
  }
  if (!c.urns.empty()) {
    doc["urns"] = json::object();
    for (const auto& [name, u] : c.urns) {
      doc["urns"][name] = {
          {"space", u.space}, {"members", u.members}, {"values", u.values}};
    }
  }
  if (!c.phis.empty()) {
    doc["phis"] = json::object();
    for (const auto& [name, p] : c.phis) {
      if (p.bivariate) {
        doc["phis"][name] = {{"x", p.x}, {"y", p.y}, {"table", p.table}};
      } else {
        doc["phis"][name] = {{"points", p.points}, {"values", p.values}};
      }
    }
  }
  if (!c.models.empty()) {
    doc["models"] = json::object();
    for (const auto& [name, m] : c.models) {
      json body = {{"urns", m.urns}};
      if (m.joint) body["joint"] = *m.joint;
      if (!m.phis.empty()) body["phis"] = m.phis;
      if (!m.peng_phi.empty()) body["peng_phi"] = m.peng_phi;
      doc["models"][name] = std::move(body);
    }
  }
  if (!c.scenarios.empty() || c.exact) {
    json w = json::object();
    if (!c.scenarios.empty()) {
      w["scenarios"] = json::array();
      for (std::size_t k = 0; k < c.scenarios.size(); ++k) {
        const auto& s = c.scenarios[k];
        json body = {{"name", s.name},
                     {"mean_lo", s.mean_lo},
                     {"mean_hi", s.mean_hi},
                     {"sigma_lo", s.sigma_lo},
                     {"sigma_hi", s.sigma_hi},
                     {"n_list", s.n_list},
                     {"reps", s.reps},
                     {"epsilon", s.epsilon},
                     {"strategy", std::string(wlln::StrategyName(s.strategy))}};
        if (k < c.scenario_seeded.size() && c.scenario_seeded[k]) {
          body["seed"] = s.seed;
        }
        w["scenarios"].push_back(std::move(body));
      }
    }
    if (c.exact) {
      w["exact"] = {{"urn", c.exact->urn},
                    {"epsilon", c.exact->epsilon},
                    {"n_list", c.exact->n_list}};
    }
    doc["wlln"] = std::move(w);
  }
  json out = {{"dir", c.output.dir}, {"format", c.output.format}};
  if (c.output.tolerance) out["tolerance"] = *c.output.tolerance;
  doc["output"] = std::move(out);
  return doc.dump(2) + "\n";
}

FiniteSpace BuildSpace(const Config& config, const std::string& name) {
  return FiniteSpace(Lookup(config.spaces, name, "space"));
}

Urn BuildUrn(const Config& config, const std::string& name) {
  const UrnDef& def = Lookup(config.urns, name, "urn");
  const FiniteSpace space = BuildSpace(config, def.space);
  std::vector<ProbabilityVector> members;
  for (const auto& row : def.members) members.emplace_back(space, row);
  return Urn(name, CredalSet(std::move(members)),
             RandomVariable(space, def.values));
}

UrnModel BuildModel(const Config& config, const std::string& name) {
  const ModelDef& def = Lookup(config.models, name, "model");
  std::vector<Urn> urns;
  for (const auto& u : def.urns) urns.push_back(BuildUrn(config, u));
  if (def.joint) return UrnModel::WithJoint(std::move(urns), *def.joint);
  return UrnModel::Product(std::move(urns));
}

PhiTuple BuildPhis(const Config& config, const std::string& model) {
  const ModelDef& def = Lookup(config.models, model, "model");
  if (def.phis.size() != def.urns.size()) {
    throw Error(ErrorKind::kInvariantError,
                "model '" + model + "' needs one phi per urn");
  }
  PhiTuple out;
  for (std::size_t i = 0; i < def.urns.size(); ++i) {
    const PhiDef& phi = Lookup(config.phis, def.phis[i], "phi");
    if (phi.bivariate) {
      throw Error(ErrorKind::kInvariantError,
                  "phi '" + def.phis[i] + "' is bivariate");
    }
    const Urn urn = BuildUrn(config, def.urns[i]);
    std::vector<double> values;
    for (double v : urn.range) {
      values.push_back(phi.values[PointIndex(phi.points, v, def.phis[i])]);
    }
    out.push_back(std::move(values));
  }
  return out;
}

comonotone::GridFunction BuildPengPhi(const Config& config,
                                      const std::string& model) {
  const ModelDef& def = Lookup(config.models, model, "model");
  if (def.peng_phi.empty()) {
    throw Error(ErrorKind::kReferenceError,
                "model '" + model + "' has no peng_phi");
  }
  if (def.urns.size() != 2) {
    throw Error(ErrorKind::kInvariantError,
                "model '" + model + "' needs two urns for peng_phi");
  }
  const PhiDef& phi = Lookup(config.phis, def.peng_phi, "phi");
  if (!phi.bivariate) {
    throw Error(ErrorKind::kInvariantError,
                "phi '" + def.peng_phi + "' is not bivariate");
  }
  const Urn u1 = BuildUrn(config, def.urns[0]);
  const Urn u2 = BuildUrn(config, def.urns[1]);
  std::vector<std::string> xs, ys;
  for (double v : u1.range) xs.push_back(FormatNumber(v));
  for (double v : u2.range) ys.push_back(FormatNumber(v));
  std::vector<double> values;
  for (double x : u1.range) {
    const auto& row = phi.table[PointIndex(phi.x, x, def.peng_phi)];
    for (double y : u2.range) {
      values.push_back(row[PointIndex(phi.y, y, def.peng_phi)]);
    }
  }
  return comonotone::GridFunction({FiniteSpace(xs), FiniteSpace(ys)},
                                  std::move(values));
}

}  // namespace caplab::config
