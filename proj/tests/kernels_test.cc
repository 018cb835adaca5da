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

#include "caplab/kernels.h"

#include <gtest/gtest.h>

#include <map>

#include "caplab/generators.h"
#include "caplab/random.h"
#include "oracle.h"

namespace caplab::kernels {
namespace {

class KernelsTest : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override { SetThreadCount(GetParam()); }
  void TearDown() override { SetThreadCount(0); }
};

TEST_P(KernelsTest, ParallelMatchesSerialBitForBit) {
  Stream stream(401);
  for (int trial = 0; trial < 30; ++trial) {
    const UrnModel m = gen::RandomProductModel(stream, 3, 8, 8);
    std::vector<double> f(m.num_outcomes());
    for (double& v : f) v = double(stream.Below(7)) - 3.0;
    const auto table = m.member_table();
    const std::size_t n = m.num_outcomes();
    EXPECT_EQ(UpperExpectation(table, n, f), serial::UpperExpectation(table, n, f));
    EXPECT_EQ(LowerExpectation(table, n, f), serial::LowerExpectation(table, n, f));
    const Survival a = UpperSurvival(table, n, f);
    const Survival b = serial::UpperSurvival(table, n, f);
    EXPECT_EQ(a.levels, b.levels);
    EXPECT_EQ(a.upper, b.upper);
  }
}

TEST_P(KernelsTest, MatchesBruteForceEnvelope) {
  Stream stream(409);
  for (int trial = 0; trial < 30; ++trial) {
    const UrnModel m = gen::RandomProductModel(stream, 2, 4, 3);
    const oracle::Model o = oracle::Model::Product(m.urns());
    std::vector<double> f(m.num_outcomes());
    for (double& v : f) v = stream.Uniform(-2, 2);
    std::size_t k = 0;
    std::map<oracle::Tuple, double> by_tuple;
    for (const auto& t : o.outcomes) by_tuple[t] = f[k++];
    auto value = [&](const oracle::Tuple& t) { return by_tuple[t]; };
    EXPECT_NEAR(UpperExpectation(m, f), o.Upper(value), 1e-12);
    EXPECT_NEAR(LowerExpectation(m, f),
                -o.Upper([&](const oracle::Tuple& t) { return -value(t); }),
                1e-12);
    const Survival s = UpperSurvival(m, f);
    for (std::size_t g = 0; g < s.levels.size(); ++g) {
      const double d = s.levels[g];
      EXPECT_NEAR(s.upper[g],
                  o.UpperProb([&](const oracle::Tuple& t) { return value(t) >= d; }),
                  1e-12);
      EXPECT_EQ(SurvivalAt(s, d), s.upper[g]);
    }
    EXPECT_EQ(SurvivalAt(s, s.levels.front() + 1), 0.0);
    EXPECT_EQ(SurvivalAt(s, s.levels.back() - 1), s.upper.back());
    EXPECT_EQ(SurvivalAt(s, s.levels.back(), true),
              s.levels.size() > 1 ? s.upper[s.levels.size() - 2] : 0.0);
  }
}

TEST_P(KernelsTest, UpperChoquetMatchesCapacityIntegral) {
  Stream stream(419);
  for (int trial = 0; trial < 20; ++trial) {
    const UrnModel m = gen::RandomProductModel(stream, 2, 3, 3);
    ASSERT_LE(m.num_outcomes(), 9u);
    std::vector<double> f(m.num_outcomes());
    for (double& v : f) v = stream.Uniform(-2, 2);
    const FiniteSpace space = FiniteSpace::Indexed(m.num_outcomes());
    std::vector<double> table(space.num_subsets());
    for (SubsetMask a = 0; a < table.size(); ++a) {
      std::vector<bool> event(m.num_outcomes());
      for (std::size_t o = 0; o < event.size(); ++o) event[o] = a >> o & 1;
      table[a] = UpperProbability(m, event);
    }
    const Capacity v = ValidateCapacity(space, table);
    EXPECT_NEAR(UpperChoquet(m, f), ChoquetIntegral(v, f), 1e-12);
  }
}

TEST(KernelsArgumentTest, RejectsWrongLength) {
  Stream stream(421);
  const UrnModel m = gen::RandomProductModel(stream, 2, 3, 2);
  std::vector<double> f(m.num_outcomes() + 1, 0.0);
  EXPECT_THROW(UpperExpectation(m, f), Error);
}

TEST(ThreadCountTest, SetAndReset) {
  SetThreadCount(3);
  EXPECT_EQ(ThreadCount(), 3);
  SetThreadCount(0);
  EXPECT_GE(ThreadCount(), 1);
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelsTest, ::testing::Values(1, 4));

}  // namespace
}  // namespace caplab::kernels
