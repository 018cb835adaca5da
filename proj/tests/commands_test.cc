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

#include "caplab/commands.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "caplab/kernels.h"
#include "test_util.h"

namespace caplab::commands {
namespace {

namespace fs = std::filesystem;
using testing_util::ConfigPath;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("caplab_commands_" +
             std::string(::testing::UnitTest::GetInstance()
                             ->current_test_info()
                             ->name()));
    fs::remove_all(root_);
  }
  void TearDown() override {
    fs::remove_all(root_);
    kernels::SetThreadCount(0);
  }

  RunResult Run(const std::string& cmd, const std::string& file,
                const std::string& sub, RunOptions options = {}) {
    options.out_dir = (root_ / sub).string();
    std::ostringstream summary;
    return RunCommand(cmd, config::LoadConfig(ConfigPath(file)), options,
                      summary);
  }

  // Every CSV below `dir`, keyed by its relative path.
  std::map<std::string, std::string> Csvs(const std::string& sub) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(root_ / sub)) {
      if (entry.path().extension() == ".csv") {
        out[fs::relative(entry.path(), root_ / sub).string()] =
            Slurp(entry.path());
      }
    }
    return out;
  }

  fs::path root_;
};

TEST_F(CommandsTest, CommandNames) {
  const auto& names = CommandNames();
  for (const char* cmd :
       {"validate", "choquet", "envelope", "classify", "pprime",
        "check-independence", "product-fubini", "wlln-exact", "wlln-mc",
        "report"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), cmd), names.end()) << cmd;
  }
}

TEST_F(CommandsTest, PengRow) {
  RunOptions options;
  options.kind = "peng";
  const RunResult r = Run("check-independence", "ellsberg_1_1.json", "peng",
                          options);
  EXPECT_EQ(r.exit_code, 0);
  const std::string csv = Slurp(root_ / "peng" / "independence.csv");
  EXPECT_EQ(csv.rfind("kind,lhs,rhs,holds,max_gap,witness\n", 0), 0u) << csv;
  EXPECT_NE(csv.find("\npeng,0.5,0.6,false,"), std::string::npos) << csv;
}

TEST_F(CommandsTest, CouplingReportsFailuresWithExitZero) {
  RunOptions options;
  options.kind = "mm";
  const RunResult r =
      Run("check-independence", "correlated_coupling.json", "mm", options);
  EXPECT_EQ(r.exit_code, 0);
  const std::string csv = Slurp(root_ / "mm" / "independence.csv");
  EXPECT_NE(csv.find("model=coupled"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",false,"), std::string::npos) << csv;
}

TEST_F(CommandsTest, UnknownCommandAndKind) {
  EXPECT_THROW(Run("frobnicate", "ellsberg_1_1.json", "x"), Error);
  RunOptions options;
  options.kind = "bogus";
  EXPECT_THROW(Run("check-independence", "ellsberg_1_1.json", "y", options),
               Error);
}

TEST_F(CommandsTest, WllnMcSixHundredSamples) {
  const RunResult r = Run("wlln-mc", "wlln_determined_sigma.json", "mc");
  EXPECT_EQ(r.exit_code, 0);
  const std::string samples = Slurp(root_ / "mc" / "samples.csv");
  EXPECT_EQ(samples.rfind("scenario,n,rep,sample_mean,in_band\n", 0), 0u);
  std::size_t determined = 0;
  std::istringstream lines(samples);
  for (std::string line; std::getline(lines, line);) {
    determined += line.rfind("determined_sigma,", 0) == 0;
  }
  EXPECT_EQ(determined, 600u);
  const std::string curves = Slurp(root_ / "mc" / "curves.csv");
  EXPECT_EQ(curves.rfind("scenario,n,frequency", 0), 0u);
}

TEST_F(CommandsTest, EveryBundledConfigRunsReport) {
  for (const char* file :
       {"ellsberg_1_1.json", "correlated_coupling.json", "two_urn_product.json",
        "wlln_determined_sigma.json", "wlln_uncertain_sigma.json"}) {
    SCOPED_TRACE(file);
    EXPECT_EQ(Run("validate", file, "validate").exit_code, 0);
    const RunResult r = Run("report", file, std::string("report_") + file);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_FALSE(r.artifacts.empty());
  }
}

TEST_F(CommandsTest, ByteIdenticalAcrossRunsAndThreadCounts) {
  for (const char* file : {"ellsberg_1_1.json", "correlated_coupling.json",
                           "two_urn_product.json", "wlln_determined_sigma.json"}) {
    SCOPED_TRACE(file);
    RunOptions one;
    one.threads = 1;
    RunOptions four;
    four.threads = 4;
    Run("report", file, "t1", one);
    Run("report", file, "t1b", one);
    Run("report", file, "t4", four);
    const auto a = Csvs("t1");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, Csvs("t1b"));
    EXPECT_EQ(a, Csvs("t4"));
    fs::remove_all(root_ / "t1");
    fs::remove_all(root_ / "t1b");
    fs::remove_all(root_ / "t4");
  }
}

TEST_F(CommandsTest, SeedOverrideChangesSamples) {
  RunOptions a;
  a.seed = 1;
  RunOptions b;
  b.seed = 2;
  Run("wlln-mc", "wlln_determined_sigma.json", "a", a);
  Run("wlln-mc", "wlln_determined_sigma.json", "b", b);
  EXPECT_NE(Slurp(root_ / "a" / "samples.csv"),
            Slurp(root_ / "b" / "samples.csv"));
}

TEST(ResolveSeedOverrideTest, Precedence) {
  EXPECT_EQ(ResolveSeedOverride(7, "9"), 7u);
  EXPECT_EQ(ResolveSeedOverride(std::nullopt, "9"), 9u);
  EXPECT_FALSE(ResolveSeedOverride(std::nullopt, nullptr).has_value());
  EXPECT_THROW(ResolveSeedOverride(std::nullopt, "nine"), Error);
}

}  // namespace
}  // namespace caplab::commands
