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

#include "caplab/ellsberg.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "caplab/generators.h"
#include "caplab/random.h"
#include "oracle.h"
#include "test_util.h"

namespace caplab::ellsberg {
namespace {

using testing_util::ExampleUrn;

std::vector<double> Values(std::span<const double> s) {
  return {s.begin(), s.end()};
}

// max over members of P(y >= v), and the same under q, for every distinct v.
void ExpectSurvivalIdentity(const CredalSet& credal,
                            const std::vector<double>& y,
                            std::span<const double> q) {
  for (double v : y) {
    double upper = 0.0;
    for (const auto& member : credal.members()) {
      double tail = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) tail += y[k] >= v ? member[k] : 0;
      upper = std::max(upper, tail);
    }
    double tail = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) tail += y[k] >= v ? q[k] : 0;
    EXPECT_NEAR(tail, upper, 1e-12) << "at value " << v;
  }
}

TEST(SortedUrnTest, StableAscendingPermutation) {
  const FiniteSpace s = FiniteSpace::Indexed(4);
  const Urn urn("u", CredalSet({ProbabilityVector(s, {0.25, 0.25, 0.25, 0.25})}),
                RandomVariable(s, {3.0, -1.0, 3.0, 0.0}));
  const SortedUrn sorted(urn);
  EXPECT_EQ(std::vector<std::size_t>(sorted.perm().begin(), sorted.perm().end()),
            (std::vector<std::size_t>{1, 3, 0, 2}));
}

TEST(BuildPprimeTest, EllsbergUrn) {
  const ProbabilityVector p = BuildPprime(SortedUrn(ExampleUrn()));
  // Atoms (R, B) with X = 1 on R.
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
}

TEST(BuildPprimeTest, ThreeValueUrn) {
  const FiniteSpace s = FiniteSpace::Indexed(3);
  const Urn urn("u",
                CredalSet({ProbabilityVector(s, {0.2, 0.3, 0.5}),
                           ProbabilityVector(s, {0.4, 0.4, 0.2})}),
                RandomVariable(s, {1.0, 2.0, 3.0}));
  const ProbabilityVector p = BuildPprime(SortedUrn(urn));
  EXPECT_NEAR(p[2], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.3, 1e-15);
  EXPECT_NEAR(p[0], 0.2, 1e-15);
}

TEST(BuildPprimeTest, SingletonIsItsOwnPprime) {
  const Urn urn = testing_util::SingletonUrn({0.1, 0.6, 0.3}, {4, -2, 7});
  const ProbabilityVector p = BuildPprime(SortedUrn(urn));
  EXPECT_NEAR(p[0], 0.1, 1e-15);
  EXPECT_NEAR(p[1], 0.6, 1e-15);
  EXPECT_NEAR(p[2], 0.3, 1e-15);
  const PprimeCheck check = VerifyPprime(SortedUrn(urn), p);
  EXPECT_TRUE(check.is_prob && check.in_core && check.survival_match);
}

TEST(BuildPprimeTest, TiedValuesSplitByMaximizingMember) {
  const FiniteSpace s = FiniteSpace::Indexed(3);
  const CredalSet credal({ProbabilityVector(s, {0.2, 0.6, 0.2}),
                          ProbabilityVector(s, {0.5, 0.1, 0.4})});
  const std::vector<double> y = {1.0, 1.0, 0.0};
  // Value 1 carries max(0.8, 0.6) = 0.8, split 0.2 : 0.6 like member 0.
  const ProbabilityVector p = BuildPprime(credal, y);
  EXPECT_NEAR(p[0], 0.2, 1e-15);
  EXPECT_NEAR(p[1], 0.6, 1e-15);
  EXPECT_NEAR(p[2], 0.2, 1e-15);
}

TEST(BuildPprimeTest, ConstantVariable) {
  const FiniteSpace s = FiniteSpace::Indexed(3);
  const CredalSet credal({ProbabilityVector(s, {0.2, 0.6, 0.2}),
                          ProbabilityVector(s, {0.0, 0.5, 0.5})});
  const std::vector<double> y = {2.0, 2.0, 2.0};
  const ProbabilityVector p = BuildPprime(credal, y);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-15);
  EXPECT_TRUE(VerifyPprime(credal, y, p).survival_match);
}

TEST(PprimeForPhiTest, IdentityAndReversal) {
  const SortedUrn u(ExampleUrn());
  // Range is {0, 1}.
  const std::vector<double> identity = {0.0, 1.0};
  EXPECT_EQ(PprimeForPhi(u, identity), BuildPprime(u));
  const std::vector<double> reversed = {0.0, -1.0};
  const ProbabilityVector p = PprimeForPhi(u, reversed);
  EXPECT_NEAR(p[1], 0.7, 1e-15);  // B, X = 0
  EXPECT_NEAR(p[0], 0.3, 1e-15);  // R, X = 1
  EXPECT_THROW(PprimeForPhi(u, std::vector<double>{1.0}), Error);
}

TEST(PprimeForPhiTest, SurvivalIdentityForRandomPhis) {
  Stream stream(211);
  for (int trial = 0; trial < 200; ++trial) {
    const SortedUrn u(gen::RandomUrn(stream, 2 + stream.Below(5),
                                     1 + stream.Below(5)));
    std::vector<double> phi(u.urn().range.size());
    for (double& v : phi) v = double(stream.Below(4));
    const ProbabilityVector p = PprimeForPhi(u, phi);
    std::vector<double> y(u.urn().x.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
      y[k] = phi[u.urn().range_index[k]];
    }
    ExpectSurvivalIdentity(u.urn().credal, y, p.p());
  }
}

TEST(VerifyPprimeTest, EllsbergUrnAllFlags) {
  const SortedUrn u(ExampleUrn());
  const PprimeCheck check = VerifyPprime(u, BuildPprime(u));
  EXPECT_TRUE(check.is_prob);
  EXPECT_TRUE(check.in_core);
  EXPECT_TRUE(check.survival_match);
  EXPECT_EQ(check.max_survival_gap, 0.0);
}

TEST(VerifyPprimeTest, RandomUrnsProbabilityAndSurvival) {
  Stream stream(223);
  for (int trial = 0; trial < 1000; ++trial) {
    const SortedUrn u(gen::RandomUrn(stream, 1 + stream.Below(6),
                                     1 + stream.Below(5)));
    const ProbabilityVector p = BuildPprime(u);
    const PprimeCheck check = VerifyPprime(u, p);
    ASSERT_TRUE(check.is_prob);
    ASSERT_TRUE(check.survival_match) << check.max_survival_gap;
    ExpectSurvivalIdentity(u.urn().credal, Values(u.urn().x.values()), p.p());
  }
}

TEST(VerifyPprimeTest, InCoreUpToThreeAtoms) {
  Stream stream(227);
  for (int trial = 0; trial < 1000; ++trial) {
    const SortedUrn u(gen::RandomUrn(stream, 1 + stream.Below(3),
                                     1 + stream.Below(5)));
    ASSERT_TRUE(VerifyPprime(u, BuildPprime(u)).in_core);
  }
}

// With four distinct values the tail-matching probability can exceed the
// upper capacity on a non-tail event.
TEST(VerifyPprimeTest, CoreCounterexampleWithFourAtoms) {
  const FiniteSpace s = FiniteSpace::Indexed(4);
  const CredalSet credal({ProbabilityVector(s, {0.5, 0.0, 0.0, 0.5}),
                          ProbabilityVector(s, {0.0, 0.5, 0.5, 0.0})});
  const std::vector<double> y = {1.0, 2.0, 3.0, 4.0};
  // Upper tails 0.5, 0.5, 1, 1 from the top give P' = (0, 0.5, 0, 0.5).
  const ProbabilityVector p = BuildPprime(credal, y);
  EXPECT_NEAR(p[0], 0.0, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  EXPECT_NEAR(p[2], 0.0, 1e-15);
  EXPECT_NEAR(p[3], 0.5, 1e-15);
  const PprimeCheck check = VerifyPprime(credal, y, p);
  EXPECT_TRUE(check.is_prob);
  EXPECT_TRUE(check.survival_match);
  EXPECT_FALSE(check.in_core);
  // P'({y=2, y=4}) = 1 while each member gives that event 0.5.
  EXPECT_EQ(check.core_witness, 0b1010u);
  EXPECT_NEAR(check.max_core_excess, 0.5, 1e-15);
}

TEST(VerifyPprimeTest, RelabelingInvariance) {
  Stream stream(233);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + stream.Below(5);
    const Urn urn = gen::RandomUrn(stream, n, 1 + stream.Below(4));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[stream.Below(k)]);

    std::vector<ProbabilityVector> members;
    for (const auto& m : urn.credal.members()) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = m[perm[k]];
      members.emplace_back(urn.credal.space(), p);
    }
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = urn.x[perm[k]];
    const Urn relabeled("r", CredalSet(members),
                        RandomVariable(urn.credal.space(), x));

    const ProbabilityVector a = BuildPprime(SortedUrn(urn));
    const ProbabilityVector b = BuildPprime(SortedUrn(relabeled));
    // Distinct values: the per-atom masses follow the relabeling.
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(b[k], a[perm[k]], 1e-15);
    const PprimeCheck ca = VerifyPprime(SortedUrn(urn), a);
    const PprimeCheck cb = VerifyPprime(SortedUrn(relabeled), b);
    EXPECT_EQ(ca.is_prob, cb.is_prob);
    EXPECT_EQ(ca.in_core, cb.in_core);
    EXPECT_EQ(ca.survival_match, cb.survival_match);
  }
}

TEST(VerifyProductFubiniTest, EllsbergIdentity) {
  const UrnModel m = testing_util::ExampleProductModel();
  const ProductFubiniReport r = VerifyProductFubini(m, {{0, 1}, {0, 1}});
  EXPECT_TRUE(r.holds);
  std::vector<double> alphas;
  for (const auto& row : r.rows) {
    alphas.push_back(row.alpha);
    EXPECT_NEAR(row.lhs, row.iterated, 1e-12);
    EXPECT_TRUE(row.upper_ok && row.lower_ok);
  }
  EXPECT_EQ(alphas, (std::vector<double>{-1, 0, 0.5, 1, 1.5, 2, 3}));
}

TEST(VerifyProductFubiniTest, SingleUrnIsIdentical) {
  Stream stream(239);
  const UrnModel m = UrnModel::Product({gen::RandomUrn(stream, 4, 3)});
  PhiTuple phis(1, std::vector<double>(m.urn(0).range.size()));
  for (double& v : phis[0]) v = stream.Uniform(-1, 1);
  const ProductFubiniReport r = VerifyProductFubini(m, phis);
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.max_gap, 1e-15);
}

TEST(VerifyProductFubiniTest, RejectsJointModels) {
  EXPECT_THROW(VerifyProductFubini(testing_util::ExampleCoupledModel(),
                                   {{0, 1}, {0, 1}}),
               Error);
}

// A fair coin against an urn whose members disagree about the middle value:
// at alpha = 2 the product law reaches only 0.5 while the iterated form,
// free to pick the second urn's member per outcome of the first, reaches 0.75.
TEST(VerifyProductFubiniTest, IteratedMaximaCanExceedTheProductLaw) {
  const FiniteSpace two = FiniteSpace::Indexed(2);
  const FiniteSpace three = FiniteSpace::Indexed(3);
  const Urn coin("C", CredalSet({ProbabilityVector(two, {0.5, 0.5})}),
                 RandomVariable(two, {0, 1}));
  const Urn urn("U",
                CredalSet({ProbabilityVector(three, {0.5, 0.0, 0.5}),
                           ProbabilityVector(three, {0.0, 1.0, 0.0})}),
                RandomVariable(three, {0, 1, 2}));
  const UrnModel m = UrnModel::Product({coin, urn});
  const ProductFubiniReport r = VerifyProductFubini(m, {{0, 1}, {0, 1, 2}});
  EXPECT_FALSE(r.holds);
  const auto row = std::find_if(r.rows.begin(), r.rows.end(),
                                [](const ThresholdRow& t) { return t.alpha == 2; });
  ASSERT_NE(row, r.rows.end());
  EXPECT_NEAR(row->lhs, 0.5, 1e-12);
  EXPECT_NEAR(row->iterated, 0.75, 1e-12);
  EXPECT_TRUE(row->upper_ok);
  EXPECT_FALSE(row->lower_ok);

  // Brute force of the left side at alpha = 2.
  const oracle::Model o = oracle::Model::Product({coin, urn});
  EXPECT_NEAR(o.UpperProb([&](const oracle::Tuple& t) {
                return o.Value(t, 0) + o.Value(t, 1) >= 2;
              }),
              0.5, 1e-15);
}

TEST(VerifyProductFubiniTest, StructuralRowProperties) {
  Stream stream(241);
  for (int trial = 0; trial < 100; ++trial) {
    const UrnModel m = gen::RandomProductModel(stream, 2 + stream.Below(2), 4, 4);
    PhiTuple phis(m.num_urns());
    for (std::size_t i = 0; i < m.num_urns(); ++i) {
      phis[i].resize(m.urn(i).range.size());
      for (double& v : phis[i]) v = double(stream.Below(5)) - 2.0;
    }
    const ProductFubiniReport r = VerifyProductFubini(m, phis);
    const oracle::Model o = oracle::Model::Product(m.urns());
    for (const auto& row : r.rows) {
      // Product law never beats the iterated maxima; sections of the last
      // urn are tails of its test function, so P' matches V on them.
      EXPECT_TRUE(row.upper_ok);
      EXPECT_NEAR(row.pprime_side, row.iterated, 1e-12);
      EXPECT_NEAR(row.lhs,
                  o.UpperProb([&](const oracle::Tuple& t) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < m.num_urns(); ++i) {
                      s += phis[i][oracle::RangePos(o.urns[i], o.Value(t, i))];
                    }
                    return s >= row.alpha;
                  }),
                  1e-12);
    }
  }
}

}  // namespace
}  // namespace caplab::ellsberg
