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

#ifndef CAPLAB_ELLSBERG_H_
#define CAPLAB_ELLSBERG_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "caplab/measure.h"
#include "caplab/urn_model.h"

namespace caplab::ellsberg {

// An urn together with the stable permutation that sorts its atoms by
// ascending value.
class SortedUrn {
 public:
  explicit SortedUrn(Urn urn);

  const Urn& urn() const { return urn_; }
  // perm()[r] is the atom holding the r-th smallest value.
  std::span<const std::size_t> perm() const { return perm_; }

 private:
  Urn urn_;
  std::vector<std::size_t> perm_;
};

// The dominating probability for the variable y (one value per atom):
// P'(y >= v) = max_P P(y >= v) for every distinct value v. Mass of a value
// shared by several atoms is split in proportion to the maximizing member's
// mass on those atoms, uniformly when that member gives the value no mass.
ProbabilityVector BuildPprime(const CredalSet& credal,
                              std::span<const double> y);
ProbabilityVector BuildPprime(const SortedUrn& u);

// The same construction for phi(X), phi tabulated on range(X).
ProbabilityVector PprimeForPhi(const SortedUrn& u, std::span<const double> phi);

struct PprimeCheck {
  bool is_prob = false;
  bool in_core = false;
  bool survival_match = false;
  double max_survival_gap = 0.0;
  // Largest P'(A) - V(A) over all events and an event attaining it.
  double max_core_excess = 0.0;
  SubsetMask core_witness = 0;
};

// Checks P' against the upper capacity of `credal` and the survival
// function of y on comonotone::BreakpointGrid(y).
PprimeCheck VerifyPprime(const CredalSet& credal, std::span<const double> y,
                         const ProbabilityVector& pprime,
                         double tolerance = Tolerance{}.direct);
PprimeCheck VerifyPprime(const SortedUrn& u, const ProbabilityVector& pprime,
                         double tolerance = Tolerance{}.direct);

struct ThresholdRow {
  double alpha;
  // V(S >= alpha) under the product law.
  double lhs;
  // Outer envelope over the first n-1 urns of V_n(event on the last urn).
  double iterated;
  // The same with V_n replaced by P' for the last urn's test function.
  double pprime_side;
  double gap;
  // lhs <= iterated and pprime_side <= lhs, each up to the tolerance.
  bool upper_ok;
  bool lower_ok;
};

struct ProductFubiniReport {
  std::vector<ThresholdRow> rows;
  double max_gap = 0.0;
  bool holds = true;
  std::string witness;
};

// Requires a product-law model. Errors: kInvalidArgument, kEnumerationCap.
ProductFubiniReport VerifyProductFubini(const UrnModel& m,
                                        const PhiTuple& phis,
                                        double tolerance = 1e-9);

}  // namespace caplab::ellsberg

#endif  // CAPLAB_ELLSBERG_H_
