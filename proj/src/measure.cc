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

#include "caplab/measure.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace caplab {
namespace {

void RequireSameSpace(const FiniteSpace& a, const FiniteSpace& b,
                      std::string_view what) {
  if (!(a == b)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + ": operands live on different spaces");
  }
}

std::string MaskString(const FiniteSpace& space, SubsetMask mask) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (std::size_t k = 0; k < space.size(); ++k) {
    if (mask >> k & 1u) {
      if (!first) out << ',';
      out << space.label(k);
      first = false;
    }
  }
  out << '}';
  return out.str();
}

}  // namespace

RandomVariable::RandomVariable(FiniteSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "random variable needs one value per atom");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kInvariantError,
                  "random variable values must be finite");
    }
  }
}

std::vector<double> RandomVariable::Range() const {
  std::vector<double> r(values_);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

ProbabilityVector::ProbabilityVector(FiniteSpace space, std::vector<double> p,
                                     double tol)
    : space_(std::move(space)), p_(std::move(p)) {
  if (p_.size() != space_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "probability vector needs one entry per atom");
  }
  double sum = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorKind::kInvariantError,
                  "probability entries must be finite and nonnegative");
    }
    sum += x;
  }
  if (std::fabs(sum - 1.0) > tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probability entries sum to " << sum << ", not 1";
    throw Error(ErrorKind::kInvariantError, msg.str());
  }
}

double ProbabilityVector::Measure(SubsetMask event) const {
  double s = 0.0;
  for (std::size_t k = 0; k < p_.size(); ++k) {
    if (event >> k & 1u) s += p_[k];
  }
  return s;
}

double ProbabilityVector::Expectation(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < p_.size(); ++k) s += p_[k] * x[k];
  return s;
}

double ProbabilityVector::Expectation(const RandomVariable& x) const {
  RequireSameSpace(space_, x.space(), "expectation");
  return Expectation(x.values());
}

std::vector<double> ProbabilityVector::SubsetTable() const {
  std::vector<double> table(space_.num_subsets(), 0.0);
  for (std::size_t a = 1; a < table.size(); ++a) {
    const int low = std::countr_zero(static_cast<SubsetMask>(a));
    table[a] = table[a & (a - 1)] + p_[low];
  }
  return table;
}

CredalSet::CredalSet(std::vector<ProbabilityVector> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "credal set must be nonempty");
  }
  for (const auto& m : members_) {
    RequireSameSpace(members_.front().space(), m.space(), "credal set");
  }
}

CredalSet CredalSet::Normalized() const {
  std::vector<ProbabilityVector> unique;
  for (const auto& m : members_) {
    if (std::find(unique.begin(), unique.end(), m) == unique.end()) {
      unique.push_back(m);
    }
  }
  return CredalSet(std::move(unique));
}

Capacity Capacity::Conjugate() const {
  const SubsetMask full = space_.full_mask();
  std::vector<double> conj(table_.size());
  for (std::size_t a = 0; a < table_.size(); ++a) {
    conj[a] = 1.0 - table_[full & ~static_cast<SubsetMask>(a)];
  }
  conj[0] = 0.0;
  conj[full] = 1.0;
  return Capacity(space_, std::move(conj));
}

Capacity ValidateCapacity(FiniteSpace space, std::vector<double> table,
                          double tol) {
  const std::size_t expected = space.num_subsets();
  if (table.size() != expected) {
    throw Error(ErrorKind::kInvalidArgument,
                "capacity table has " + std::to_string(table.size()) +
                    " entries, expected " + std::to_string(expected));
  }
  const SubsetMask full = space.full_mask();
  if (std::fabs(table[0]) > tol || std::fabs(table[full] - 1.0) > tol) {
    throw Error(ErrorKind::kNotGrounded,
                "capacity must satisfy V(empty)=0 and V(Omega)=1");
  }
  for (std::size_t a = 0; a < expected; ++a) {
    if (!std::isfinite(table[a])) {
      throw Error(ErrorKind::kInvariantError, "capacity values must be finite");
    }
    for (std::size_t k = 0; k < space.size(); ++k) {
      const SubsetMask bit = SubsetMask{1} << k;
      if (a & bit) continue;
      const SubsetMask b = static_cast<SubsetMask>(a) | bit;
      if (table[a] > table[b] + tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "capacity not monotone: V(" << MaskString(space, a)
            << ")=" << table[a] << " > V(" << MaskString(space, b)
            << ")=" << table[b];
        throw Error(ErrorKind::kNotMonotone, msg.str());
      }
    }
  }
  return Capacity(std::move(space), std::move(table));
}

bool IsTwoAlternating(const Capacity& v, double tol) {
  RequireAtMost(v.space(), kMaxExhaustiveAtoms, "two-alternating check");
  const std::size_t count = v.space().num_subsets();
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const auto ma = static_cast<SubsetMask>(a);
      const auto mb = static_cast<SubsetMask>(b);
      if (v(ma | mb) + v(ma & mb) > v(ma) + v(mb) + tol) return false;
    }
  }
  return true;
}

std::vector<double> MobiusTransform(std::span<const double> table) {
  std::vector<double> m(table.begin(), table.end());
  for (std::size_t bit = 1; bit < m.size(); bit <<= 1) {
    for (std::size_t a = 0; a < m.size(); ++a) {
      if (a & bit) m[a] -= m[a ^ bit];
    }
  }
  return m;
}

std::vector<double> ZetaTransform(std::span<const double> mobius) {
  std::vector<double> v(mobius.begin(), mobius.end());
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (a & bit) v[a] += v[a ^ bit];
    }
  }
  return v;
}

CapacityClass ClassifyCapacity(const Capacity& v, double tol) {
  RequireAtMost(v.space(), kMaxExhaustiveAtoms, "capacity classification");
  CapacityClass c;
  c.two_alternating = IsTwoAlternating(v, tol);
  const auto nonnegative = [tol](const std::vector<double>& m) {
    return std::all_of(m.begin(), m.end(),
                       [tol](double x) { return x >= -tol; });
  };
  c.totally_monotone = nonnegative(MobiusTransform(v.table()));
  c.totally_alternating =
      nonnegative(MobiusTransform(v.Conjugate().table()));
  return c;
}

std::vector<std::size_t> DescendingOrder(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  return order;
}

double ChoquetIntegral(const Capacity& v, std::span<const double> x) {
  if (x.size() != v.space().size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "Choquet integral: value count does not match the space");
  }
  const auto order = DescendingOrder(x);
  double total = 0.0;
  double previous = 0.0;
  SubsetMask top = 0;
  std::size_t k = 0;
  while (k < order.size()) {
    const double level = x[order[k]];
    while (k < order.size() && x[order[k]] == level) {
      top |= SubsetMask{1} << order[k];
      ++k;
    }
    const double current = v(top);
    total += level * (current - previous);
    previous = current;
  }
  return total;
}

double ChoquetIntegral(const Capacity& v, const RandomVariable& x) {
  RequireSameSpace(v.space(), x.space(), "Choquet integral");
  return ChoquetIntegral(v, x.values());
}

double UpperEnvelope(const CredalSet& p, std::span<const double> x) {
  double best = p[0].Expectation(x);
  for (std::size_t i = 1; i < p.size(); ++i) {
    best = std::max(best, p[i].Expectation(x));
  }
  return best;
}

double LowerEnvelope(const CredalSet& p, std::span<const double> x) {
  double best = p[0].Expectation(x);
  for (std::size_t i = 1; i < p.size(); ++i) {
    best = std::min(best, p[i].Expectation(x));
  }
  return best;
}

double UpperEnvelope(const CredalSet& p, const RandomVariable& x) {
  RequireSameSpace(p.space(), x.space(), "upper envelope");
  return UpperEnvelope(p, x.values());
}

double LowerEnvelope(const CredalSet& p, const RandomVariable& x) {
  RequireSameSpace(p.space(), x.space(), "lower envelope");
  return LowerEnvelope(p, x.values());
}

Capacity UpperCapacity(const CredalSet& p) {
  std::vector<double> table = p[0].SubsetTable();
  for (std::size_t i = 1; i < p.size(); ++i) {
    const auto t = p[i].SubsetTable();
    for (std::size_t a = 0; a < t.size(); ++a) {
      table[a] = std::max(table[a], t[a]);
    }
  }
  table[0] = 0.0;
  return ValidateCapacity(p.space(), std::move(table));
}

Capacity LowerCapacity(const CredalSet& p) {
  std::vector<double> table = p[0].SubsetTable();
  for (std::size_t i = 1; i < p.size(); ++i) {
    const auto t = p[i].SubsetTable();
    for (std::size_t a = 0; a < t.size(); ++a) {
      table[a] = std::min(table[a], t[a]);
    }
  }
  table[0] = 0.0;
  return ValidateCapacity(p.space(), std::move(table));
}

bool CoreMembership(const ProbabilityVector& q, const Capacity& v,
                    double tol) {
  RequireSameSpace(q.space(), v.space(), "core membership");
  const auto t = q.SubsetTable();
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t[a] > v(static_cast<SubsetMask>(a)) + tol) return false;
  }
  return true;
}

CoreSup CoreSupExpectation(const Capacity& v, const RandomVariable& x,
                           double tol) {
  RequireSameSpace(v.space(), x.space(), "core sup expectation");
  RequireAtMost(v.space(), kMaxExhaustiveAtoms, "core sup expectation");
  if (!IsTwoAlternating(v, tol)) {
    throw Error(ErrorKind::kNotTwoAlternating,
                "greedy core maximizer requires a two-alternating capacity");
  }
  const auto order = DescendingOrder(x.values());
  std::vector<double> q(order.size(), 0.0);
  SubsetMask top = 0;
  double previous = 0.0;
  double value = 0.0;
  for (std::size_t atom : order) {
    top |= SubsetMask{1} << atom;
    const double current = v(top);
    // Monotone up to tol; clip rounding noise so q stays a probability.
    q[atom] = std::max(0.0, current - previous);
    value += q[atom] * x[atom];
    previous = current;
  }
  return CoreSup{value, ProbabilityVector(v.space(), std::move(q))};
}

}  // namespace caplab
