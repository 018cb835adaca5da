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

#ifndef CAPLAB_URN_MODEL_H_
#define CAPLAB_URN_MODEL_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "caplab/measure.h"

namespace caplab {

inline constexpr std::size_t kMaxProductMembers = 1'000'000;
inline constexpr std::size_t kMaxProductOutcomes = 1'000'000;
// Member-by-outcome probability tables are materialized up to this size.
inline constexpr std::size_t kMaxMemberTableEntries = std::size_t{1} << 24;

// One ambiguous urn: its credal set and the random variable it carries.
struct Urn {
  Urn(std::string name, CredalSet credal, RandomVariable x);

  std::string name;
  CredalSet credal;
  RandomVariable x;
  // Sorted distinct values of x and, per atom, the index of its value.
  std::vector<double> range;
  std::vector<std::size_t> range_index;
};

// One tabulated bounded function per urn, aligned with Urn::range.
using PhiTuple = std::vector<std::vector<double>>;

// Several urns observed jointly. Outcomes are tuples of atoms (last urn
// varies fastest). The joint law is either every product of per-urn
// members or an explicit list of joint probability vectors.
class UrnModel {
 public:
  // Errors: kEnumerationCap.
  static UrnModel Product(std::vector<Urn> urns);
  // Each joint row has one probability per outcome. Errors:
  // kInvariantError, kEnumerationCap.
  static UrnModel WithJoint(std::vector<Urn> urns,
                            std::vector<std::vector<double>> joint);

  std::size_t num_urns() const { return urns_.size(); }
  const Urn& urn(std::size_t i) const { return urns_[i]; }
  const std::vector<Urn>& urns() const { return urns_; }
  bool is_product() const { return product_; }

  std::span<const std::size_t> shape() const { return shape_; }
  std::size_t num_outcomes() const { return num_outcomes_; }
  std::size_t num_members() const { return num_members_; }

  // Row-major num_members() x num_outcomes() joint probabilities.
  std::span<const double> member_table() const { return *table_; }
  std::span<const double> member(std::size_t m) const {
    return member_table().subspan(m * num_outcomes_, num_outcomes_);
  }

  std::size_t Atom(std::size_t outcome, std::size_t urn) const {
    return outcome / strides_[urn] % shape_[urn];
  }
  double Value(std::size_t outcome, std::size_t urn) const {
    return urns_[urn].x[Atom(outcome, urn)];
  }
  std::size_t RangeIndex(std::size_t outcome, std::size_t urn) const {
    return urns_[urn].range_index[Atom(outcome, urn)];
  }

  // sum_{i in [first, last)} phi_i(X_i) per outcome, summed left to right.
  std::vector<double> PhiSum(const PhiTuple& phis, std::size_t first,
                             std::size_t last) const;
  std::vector<double> PhiSum(const PhiTuple& phis) const {
    return PhiSum(phis, 0, num_urns());
  }

  // Product law over urns [0, count).
  UrnModel ProductPrefix(std::size_t count) const;

  // Throws kInvalidArgument unless phis has one row per urn of the right
  // length.
  void CheckPhis(const PhiTuple& phis) const;

 private:
  UrnModel() = default;
  void InitShape();

  std::vector<Urn> urns_;
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::size_t num_outcomes_ = 0;
  std::size_t num_members_ = 0;
  bool product_ = true;
  std::shared_ptr<const std::vector<double>> table_;
};

}  // namespace caplab

#endif  // CAPLAB_URN_MODEL_H_
