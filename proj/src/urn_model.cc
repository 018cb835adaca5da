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

#include "caplab/urn_model.h"

#include <algorithm>
#include <cmath>

#include "caplab/error.h"

namespace caplab {

Urn::Urn(std::string name_in, CredalSet credal_in, RandomVariable x_in)
    : name(std::move(name_in)),
      credal(std::move(credal_in)),
      x(std::move(x_in)) {
  if (!(credal.space() == x.space())) {
    throw Error(ErrorKind::kInvalidArgument,
                "urn '" + name + "': credal set and variable disagree on atoms");
  }
  range = x.Range();
  range_index.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    range_index[k] = static_cast<std::size_t>(
        std::lower_bound(range.begin(), range.end(), x[k]) - range.begin());
  }
}

void UrnModel::InitShape() {
  if (urns_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "model needs at least one urn");
  }
  shape_.clear();
  for (const auto& u : urns_) shape_.push_back(u.x.size());
  strides_.assign(urns_.size(), 1);
  num_outcomes_ = 1;
  for (std::size_t i = urns_.size(); i-- > 0;) {
    strides_[i] = num_outcomes_;
    num_outcomes_ *= shape_[i];
    if (num_outcomes_ > kMaxProductOutcomes) {
      throw Error(ErrorKind::kEnumerationCap,
                  "product outcome space exceeds " +
                      std::to_string(kMaxProductOutcomes));
    }
  }
}

UrnModel UrnModel::Product(std::vector<Urn> urns) {
  UrnModel m;
  m.urns_ = std::move(urns);
  m.InitShape();
  m.product_ = true;
  m.num_members_ = 1;
  for (const auto& u : m.urns_) {
    m.num_members_ *= u.credal.size();
    if (m.num_members_ > kMaxProductMembers) {
      throw Error(ErrorKind::kEnumerationCap,
                  "product credal set exceeds " +
                      std::to_string(kMaxProductMembers) + " members");
    }
  }
  if (m.num_members_ * m.num_outcomes_ > kMaxMemberTableEntries) {
    throw Error(ErrorKind::kEnumerationCap,
                "members x outcomes exceeds " +
                    std::to_string(kMaxMemberTableEntries));
  }
  const std::size_t n = m.urns_.size();
  auto table = std::make_shared<std::vector<double>>(
      m.num_members_ * m.num_outcomes_);
  std::vector<std::size_t> selection(n, 0);
  for (std::size_t s = 0; s < m.num_members_; ++s) {
    double* row = table->data() + s * m.num_outcomes_;
    for (std::size_t o = 0; o < m.num_outcomes_; ++o) {
      double p = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        p *= m.urns_[i].credal[selection[i]][m.Atom(o, i)];
      }
      row[o] = p;
    }
    for (std::size_t i = n; i-- > 0;) {
      if (++selection[i] < m.urns_[i].credal.size()) break;
      selection[i] = 0;
    }
  }
  m.table_ = std::move(table);
  return m;
}

UrnModel UrnModel::WithJoint(std::vector<Urn> urns,
                             std::vector<std::vector<double>> joint) {
  UrnModel m;
  m.urns_ = std::move(urns);
  m.InitShape();
  m.product_ = false;
  if (joint.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "joint credal set is empty");
  }
  m.num_members_ = joint.size();
  if (m.num_members_ * m.num_outcomes_ > kMaxMemberTableEntries) {
    throw Error(ErrorKind::kEnumerationCap, "joint table too large");
  }
  auto table = std::make_shared<std::vector<double>>();
  table->reserve(m.num_members_ * m.num_outcomes_);
  for (std::size_t r = 0; r < joint.size(); ++r) {
    const auto& row = joint[r];
    if (row.size() != m.num_outcomes_) {
      throw Error(ErrorKind::kInvariantError,
                  "joint row " + std::to_string(r) + " has " +
                      std::to_string(row.size()) + " entries, expected " +
                      std::to_string(m.num_outcomes_));
    }
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::kInvariantError,
                    "joint row " + std::to_string(r) + " has a bad entry");
      }
      sum += p;
    }
    if (std::fabs(sum - 1.0) > Tolerance{}.direct) {
      throw Error(ErrorKind::kInvariantError,
                  "joint row " + std::to_string(r) + " does not sum to 1");
    }
    table->insert(table->end(), row.begin(), row.end());
  }
  m.table_ = std::move(table);
  return m;
}

std::vector<double> UrnModel::PhiSum(const PhiTuple& phis, std::size_t first,
                                     std::size_t last) const {
  CheckPhis(phis);
  std::vector<double> out(num_outcomes_);
  for (std::size_t o = 0; o < num_outcomes_; ++o) {
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) s += phis[i][RangeIndex(o, i)];
    out[o] = s;
  }
  return out;
}

UrnModel UrnModel::ProductPrefix(std::size_t count) const {
  if (count == 0 || count > urns_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "bad prefix length");
  }
  return Product(std::vector<Urn>(urns_.begin(), urns_.begin() + count));
}

void UrnModel::CheckPhis(const PhiTuple& phis) const {
  if (phis.size() != urns_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "need one test function per urn");
  }
  for (std::size_t i = 0; i < urns_.size(); ++i) {
    if (phis[i].size() != urns_[i].range.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "test function for urn '" + urns_[i].name +
                      "' must have one value per distinct outcome value");
    }
  }
}

}  // namespace caplab
