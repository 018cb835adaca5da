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

// caplab: command-line front end for the capacity and independence library.
//
//   caplab <command> --config scenario.json [--out DIR] [--seed N]
//          [--tolerance T] [--threads N] [--format csv|svg|both]
//   caplab check-independence --kind peng --config scenario.json
//
// Exit status is 0 whenever the command ran, including checks that report
// holds=false; errors exit 1 with a JSON record on stderr.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "caplab/commands.h"
#include "caplab/config.h"
#include "caplab/error.h"
#include "json.hpp"

namespace {

int ReportError(std::string_view kind, const std::string& message) {
  const nlohmann::json record = {
      {"error", {{"kind", std::string(kind)}, {"message", message}}}};
  std::cerr << record.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacities, Choquet integrals and independence under ambiguity"};
  app.require_subcommand(1);

  std::string config_path;
  caplab::commands::RunOptions options;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;

  app.add_option("--config", config_path, "Scenario JSON document")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", options.out_dir, "Output directory");
  app.add_option("--seed", seed, "Seed overriding CAPLAB_SEED and the config");
  app.add_option("--tolerance", tolerance, "Tolerance for equality checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", options.threads, "OpenMP threads (0: default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", options.format, "Artifacts for curves")
      ->check(CLI::IsMember({"csv", "svg", "both"}));

  for (const auto& name : caplab::commands::CommandNames()) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    if (name == "check-independence") {
      sub->add_option("--kind", options.kind, "mm, exp, fubini or peng")
          ->required()
          ->check(CLI::IsMember({"mm", "exp", "fubini", "peng"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    options.seed = caplab::commands::ResolveSeedOverride(
        seed, std::getenv("CAPLAB_SEED"));
    options.tolerance = tolerance;
    const auto config = caplab::config::LoadConfig(config_path);
    const std::string command = app.get_subcommands().front()->get_name();
    return caplab::commands::RunCommand(command, config, options, std::cout)
        .exit_code;
  } catch (const caplab::Error& e) {
    return ReportError(caplab::ErrorKindName(e.kind()), e.what());
  } catch (const std::exception& e) {
    return ReportError("Internal", e.what());
  }
}
