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

#ifndef CAPLAB_CONFIG_H_
#define CAPLAB_CONFIG_H_

// JSON scenario documents (schema version 1).
//
//   {
//     "version": 1,
//     "seed": 7,                                     optional
//     "spaces": {"coin": ["R", "B"]},
//     "urns": {"u1": {"space": "coin",
//                     "members": [[0.5, 0.5], [0.3, 0.7]],
//                     "values": [1, 0]}},
//     "phis": {"id": {"points": [0, 1], "values": [0, 1]},
//              "xor": {"x": [0, 1], "y": [0, 1],
//                      "table": [[0, 1], [1, 0]]}},
//     "models": {"m": {"urns": ["u1", "u2"],
//                      "joint": [[...], ...],        optional
//                      "phis": ["id", "id"],         optional
//                      "peng_phi": "xor"}},          optional
//     "wlln": {"scenarios": [{"name": ..., "mean_lo": ..., "mean_hi": ...,
//                             "sigma_lo": ..., "sigma_hi": ...,
//                             "n_list": [...], "reps": ..., "epsilon": ...,
//                              "strategy": ..., "seed": ...}],
//              "exact": {"urn": "u1", "epsilon": 0.25,
//                        "n_list": [2, 4]}},
//     "output": {"dir": "out", "format": "both", "tolerance": 1e-9}
//   }
//
// Univariate phis map each listed point to a value; a model applies them to
// its urns by value. Bivariate phis tabulate phi(x, y) with rows indexed by
// "x". Names are unique per section.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caplab/comonotone.h"
#include "caplab/urn_model.h"
#include "caplab/wlln.h"

namespace caplab::config {

// Seed used when neither the command line, CAPLAB_SEED, nor the document
// provides one.
inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct UrnDef {
  std::string space;
  std::vector<std::vector<double>> members;
  std::vector<double> values;
  bool operator==(const UrnDef&) const = default;
};

struct PhiDef {
  bool bivariate = false;
  std::vector<double> points;
  std::vector<double> values;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::vector<double>> table;
  bool operator==(const PhiDef&) const = default;
};

struct ModelDef {
  std::vector<std::string> urns;
  std::optional<std::vector<std::vector<double>>> joint;
  std::vector<std::string> phis;
  std::string peng_phi;
  bool operator==(const ModelDef&) const = default;
};

struct ExactDef {
  std::string urn;
  double epsilon = 0.0;
  std::vector<int> n_list;
  bool operator==(const ExactDef&) const = default;
};

struct OutputDef {
  std::string dir = "out";
  std::string format = "csv";
  std::optional<double> tolerance;
  bool operator==(const OutputDef&) const = default;
};

struct Config {
  int version = 1;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::vector<std::string>> spaces;
  std::map<std::string, UrnDef> urns;
  std::map<std::string, PhiDef> phis;
  std::map<std::string, ModelDef> models;
  std::vector<wlln::Scenario> scenarios;
  // Per scenario: true when its seed came from the document rather than
  // the top-level seed.
  std::vector<bool> scenario_seeded;
  std::optional<ExactDef> exact;
  OutputDef output;
  bool operator==(const Config&) const = default;
};

// Errors: kParseError for malformed JSON. Otherwise every violation is
// collected into one Error listing them all. Its kind is kSchemaError if any
// violation is a schema error, else kReferenceError if any is a dangling
// reference, else kInvariantError.
Config ParseConfig(const std::string& text);
// Errors: kIoError plus those of ParseConfig.
Config LoadConfig(const std::string& path);

// Canonical document: keys sorted, numbers in shortest round-trip form.
std::string WriteConfig(const Config& config);

FiniteSpace BuildSpace(const Config& config, const std::string& name);
Urn BuildUrn(const Config& config, const std::string& name);
UrnModel BuildModel(const Config& config, const std::string& name);
// The model's phis aligned to each urn's range.
PhiTuple BuildPhis(const Config& config, const std::string& model);
// The model's peng_phi on range(X_1) x range(X_2).
comonotone::GridFunction BuildPengPhi(const Config& config,
                                      const std::string& model);

}  // namespace caplab::config

#endif  // CAPLAB_CONFIG_H_
