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

#ifndef CAPLAB_COMMANDS_H_
#define CAPLAB_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "caplab/config.h"

namespace caplab::commands {

struct RunOptions {
  // Empty: the config's output.dir.
  std::string out_dir;
  // Overrides every seed in the config when set.
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  // <= 0: OpenMP default.
  int threads = 0;
  // "csv", "svg" or "both"; empty: the config's output.format.
  std::string format;
  // check-independence only: mm, exp, fubini or peng.
  std::string kind;
};

struct RunResult {
  int exit_code = 0;
  // Paths written, in order.
  std::vector<std::string> artifacts;
};

// validate, choquet, envelope, classify, pprime, check-independence,
// product-fubini, wlln-exact, wlln-mc, report.
const std::vector<std::string>& CommandNames();

// --seed, then CAPLAB_SEED (given as `env`, may be null), then nothing.
// Errors: kInvalidArgument for an unparsable CAPLAB_SEED.
std::optional<std::uint64_t> ResolveSeedOverride(
    std::optional<std::uint64_t> flag, const char* env);

// Runs one command, prints a human-readable summary to `summary`, writes
// its artifacts. A check that reports "does not hold" still exits 0.
// Errors: any caplab::Error from the modules, kInvalidArgument for an
// unknown command or a command the config cannot serve.
RunResult RunCommand(const std::string& command, const config::Config& config,
                     const RunOptions& options, std::ostream& summary);

}  // namespace caplab::commands

#endif  // CAPLAB_COMMANDS_H_
