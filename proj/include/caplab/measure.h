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

#ifndef CAPLAB_MEASURE_H_
#define CAPLAB_MEASURE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "caplab/error.h"
#include "caplab/space.h"

namespace caplab {

// Real value per atom.
class RandomVariable {
 public:
  RandomVariable(FiniteSpace space, std::vector<double> values);

  const FiniteSpace& space() const { return space_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }

  // Sorted distinct values.
  std::vector<double> Range() const;

  bool operator==(const RandomVariable& other) const = default;

 private:
  FiniteSpace space_;
  std::vector<double> values_;
};

class ProbabilityVector {
 public:
  // Requires p_k >= 0 and |sum - 1| <= tol. Throws kInvariantError.
  ProbabilityVector(FiniteSpace space, std::vector<double> p,
                    double tol = Tolerance{}.direct);

  const FiniteSpace& space() const { return space_; }
  std::span<const double> p() const { return p_; }
  double operator[](std::size_t k) const { return p_[k]; }
  std::size_t size() const { return p_.size(); }

  double Measure(SubsetMask event) const;
  double Expectation(std::span<const double> x) const;
  double Expectation(const RandomVariable& x) const;

  // P(A) for every mask, indexed by mask.
  std::vector<double> SubsetTable() const;

  bool operator==(const ProbabilityVector& other) const = default;

 private:
  FiniteSpace space_;
  std::vector<double> p_;
};

// A finite, nonempty list of probability vectors on one space.
class CredalSet {
 public:
  explicit CredalSet(std::vector<ProbabilityVector> members);

  const FiniteSpace& space() const { return members_.front().space(); }
  const std::vector<ProbabilityVector>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const ProbabilityVector& operator[](std::size_t i) const {
    return members_[i];
  }

  // Same set with exact duplicates removed, first occurrence kept.
  CredalSet Normalized() const;

  bool operator==(const CredalSet& other) const = default;

 private:
  std::vector<ProbabilityVector> members_;
};

// A monotone set function on all 2^n subsets with V(empty)=0, V(Omega)=1.
// Construct through ValidateCapacity or the credal constructors below.
class Capacity {
 public:
  const FiniteSpace& space() const { return space_; }
  std::span<const double> table() const { return table_; }
  double operator()(SubsetMask a) const { return table_[a]; }

  // A -> 1 - V(A^c).
  Capacity Conjugate() const;

 private:
  friend Capacity ValidateCapacity(FiniteSpace, std::vector<double>, double);
  Capacity(FiniteSpace space, std::vector<double> table)
      : space_(std::move(space)), table_(std::move(table)) {}

  FiniteSpace space_;
  std::vector<double> table_;
};

// Checks grounding and monotonicity (single-bit superset sweep).
// Errors: kNotGrounded, kNotMonotone (with the witness pair in the message),
// kInvalidArgument for a table of the wrong length.
Capacity ValidateCapacity(FiniteSpace space, std::vector<double> table,
                          double tol = Tolerance{}.direct);

struct CapacityClass {
  bool two_alternating = false;
  bool totally_monotone = false;
  bool totally_alternating = false;
};

// Exhaustive, n <= kMaxExhaustiveAtoms (kTooLarge otherwise). Total
// monotonicity is nonnegativity of the Moebius transform; total alternation
// is the same test on the conjugate.
CapacityClass ClassifyCapacity(const Capacity& v,
                               double tol = Tolerance{}.direct);

// Exhaustive pair check V(A u B) + V(A n B) <= V(A) + V(B).
bool IsTwoAlternating(const Capacity& v, double tol = Tolerance{}.direct);

// m(A) = sum_{B subset A} (-1)^{|A \ B|} V(B), in place over a 2^n table.
std::vector<double> MobiusTransform(std::span<const double> table);
// Inverse of MobiusTransform: V(A) = sum_{B subset A} m(B).
std::vector<double> ZetaTransform(std::span<const double> mobius);

// Atom indices sorted by descending value; ties keep atom order.
std::vector<std::size_t> DescendingOrder(std::span<const double> x);

// Choquet integral by descending-value telescoping. V is only queried at
// the end of each tie group, so the result does not depend on tie order.
double ChoquetIntegral(const Capacity& v, std::span<const double> x);
double ChoquetIntegral(const Capacity& v, const RandomVariable& x);

double UpperEnvelope(const CredalSet& p, std::span<const double> x);
double LowerEnvelope(const CredalSet& p, std::span<const double> x);
double UpperEnvelope(const CredalSet& p, const RandomVariable& x);
double LowerEnvelope(const CredalSet& p, const RandomVariable& x);

// A -> max_P P(A) and A -> min_P P(A). n <= kMaxTableAtoms.
Capacity UpperCapacity(const CredalSet& p);
Capacity LowerCapacity(const CredalSet& p);

// Q(A) <= V(A) + tol for every mask.
bool CoreMembership(const ProbabilityVector& q, const Capacity& v,
                    double tol = Tolerance{}.direct);

struct CoreSup {
  double value;
  ProbabilityVector argmax;
};

// Greedy maximizer of E_Q[X] over core(V) for two-alternating V.
// Errors: kNotTwoAlternating, kTooLarge.
CoreSup CoreSupExpectation(const Capacity& v, const RandomVariable& x,
                           double tol = Tolerance{}.direct);

}  // namespace caplab

#endif  // CAPLAB_MEASURE_H_
