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

#ifndef CAPLAB_INDEPENDENCE_H_
#define CAPLAB_INDEPENDENCE_H_

// Decision procedures for independence notions on finite urn models.
//
// Every expectation below is the upper envelope over the model's joint law
// unless a function name says Choquet. Verdicts compare envelopes; the
// Choquet forms are reported next to them as diagnostics.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "caplab/comonotone.h"
#include "caplab/urn_model.h"

namespace caplab::independence {

enum class Kind { kMm, kExponential, kFubiniChain, kPeng, kProductRule };

// "mm", "exp", "fubini", "peng", "product-rule".
std::string_view KindName(Kind kind);

struct Report {
  Kind kind = Kind::kMm;
  bool holds = true;
  double max_gap = 0.0;
  // Both sides of the equality at the largest gap.
  double lhs = 0.0;
  double rhs = 0.0;
  // The instance with the largest gap (first one on ties); empty when the
  // check holds.
  std::string witness;
  std::size_t checks = 0;
  std::size_t failures = 0;
  // Exponential checks only: largest relative gap of the same factorization
  // with Choquet integrals against the upper capacity.
  double choquet_max_gap = 0.0;
};

struct Options {
  double tolerance = 1e-9;
  // Random test-function tuples, values uniform in [-3, 3].
  std::size_t trials = 200;
  std::uint64_t seed = 20240607;
  // Step functions take values 0 and -k for k = 1..max_step.
  int max_step = 30;
  // Set tuples beyond this count are sampled instead of enumerated.
  std::size_t max_tuples = 1024;
};

// Product rule V(X_i in A, X_j in B) = V(X_i in A) V(X_j in B) for every
// pair of value subsets. Errors: kInvalidArgument, kEnumerationCap.
Report MmIndependent(const UrnModel& m, std::size_t i, std::size_t j,
                     double tolerance = 1e-9);

// Both sides of the rectangle rule for one pair of value subsets (bit k of a
// mask selects range value k).
struct Rectangle {
  double joint;
  double product;
};
Rectangle MmRectangle(const UrnModel& m, std::size_t i, std::size_t j,
                      std::uint64_t a_mask, std::uint64_t b_mask);

// Seeded random test functions, one value per range point.
std::vector<PhiTuple> SamplePhis(const UrnModel& m, std::size_t count,
                                 std::uint64_t seed);

// Factorization E[e^{sum_i phi_i}] = E[e^{sum_{i<n} phi_i}] E[e^{phi_n}] on
// the random tuples and the step family.
Report ExpIndependent(const UrnModel& m, const Options& options = {});
// The same factorization on the given tuples only.
Report ExpIndependentOn(const UrnModel& m, const std::vector<PhiTuple>& phis,
                        double tolerance = 1e-9);
// The same factorization on the step family only.
Report ExpIndependentSteps(const UrnModel& m, const Options& options = {});

// Which threshold events a Fubini check evaluates.
enum class Convention { kBoth, kAtLeast, kGreater };

// V(S >= a) against the iterated form: outer envelope over the product of
// the first n-1 urns, inner upper capacity of the last urn. Both >= and >
// are evaluated on comonotone::BreakpointGrid of the values of S.
Report FubiniIndependentChain(const UrnModel& m, const PhiTuple& phis,
                              double tolerance = 1e-9,
                              Convention convention = Convention::kBoth);

struct PengResult {
  double lhs;
  double rhs;
  bool equal;
};

// Two urns. phi is tabulated on range(X_1) x range(X_2).
PengResult PengCheck(const UrnModel& m, const comonotone::GridFunction& phi,
                     double tolerance = 1e-9);

// E[e^{S}] against the iterated expectation, S = sum phi_i(X_i), split as
// (first n-1 urns, last urn).
struct FubiniTheorem {
  double lhs;
  double rhs;
  double choquet_lhs;
  double choquet_rhs;
};
FubiniTheorem FubiniTheoremSides(const UrnModel& m, const PhiTuple& phis);

// V(X_1 in A_1, ..., X_n in A_n) = prod_i V(X_i in A_i).
Report ProductRule(const UrnModel& m, const Options& options = {});

struct ImplicationReport {
  // Fubini chain, exponential, MM, product rule, in that order.
  std::vector<Report> reports;
  // False when a stronger notion holds and a weaker one it implies fails.
  bool coherent = true;
  std::string note;
};

ImplicationReport ImplicationSuite(const UrnModel& m,
                                   const Options& options = {});

}  // namespace caplab::independence

#endif  // CAPLAB_INDEPENDENCE_H_
