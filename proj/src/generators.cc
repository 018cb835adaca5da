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

#include "caplab/generators.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "caplab/error.h"

namespace caplab::gen {

ProbabilityVector RandomProbability(Stream& stream, const FiniteSpace& space) {
  std::vector<double> p(space.size());
  double total = 0.0;
  for (double& v : p) {
    v = -std::log(stream.OpenUniform());
    total += v;
  }
  for (double& v : p) v /= total;
  return ProbabilityVector(space, std::move(p));
}

CredalSet RandomCredal(Stream& stream, const FiniteSpace& space,
                       std::size_t members) {
  std::vector<ProbabilityVector> out;
  for (std::size_t l = 0; l < members; ++l) {
    out.push_back(RandomProbability(stream, space));
  }
  return CredalSet(std::move(out));
}

Urn RandomUrn(Stream& stream, std::size_t atoms, std::size_t members,
              const std::string& name) {
  if (atoms < 1 || atoms > 11 || members < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "random urn needs 1..11 atoms and at least one member");
  }
  std::vector<double> pool(11);
  std::iota(pool.begin(), pool.end(), -5.0);
  std::vector<double> values;
  for (std::size_t k = 0; k < atoms; ++k) {
    const std::size_t pick = stream.Below(pool.size());
    values.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  const FiniteSpace space = FiniteSpace::Indexed(atoms);
  CredalSet credal = RandomCredal(stream, space, members);
  return Urn(name, std::move(credal), RandomVariable(space, std::move(values)));
}

UrnModel RandomProductModel(Stream& stream, std::size_t urns,
                            std::size_t max_values, std::size_t max_members) {
  std::vector<Urn> out;
  for (std::size_t i = 0; i < urns; ++i) {
    const std::size_t atoms = 2 + stream.Below(max_values - 1);
    const std::size_t members = 1 + stream.Below(max_members);
    out.push_back(RandomUrn(stream, atoms, members, "u" + std::to_string(i + 1)));
  }
  return UrnModel::Product(std::move(out));
}

Capacity RandomConcaveDistortion(Stream& stream, const FiniteSpace& space) {
  const ProbabilityVector p = RandomProbability(stream, space);
  const double a = stream.Uniform(0.2, 1.0);
  std::vector<double> table = p.SubsetTable();
  for (double& v : table) v = std::pow(std::min(v, 1.0), a);
  table.front() = 0.0;
  table.back() = 1.0;
  return ValidateCapacity(space, std::move(table));
}

comonotone::GridFunction RandomExpSumGrid(Stream& stream,
                                          std::size_t max_side) {
  std::vector<comonotone::BoundedFn> phis;
  for (int axis = 0; axis < 2; ++axis) {
    const std::size_t side = 2 + stream.Below(max_side - 1);
    comonotone::BoundedFn phi{
        FiniteSpace::Indexed(side, axis == 0 ? "x" : "y"), {}};
    for (std::size_t k = 0; k < side; ++k) {
      phi.values.push_back(stream.Uniform(-1.0, 1.0));
    }
    phis.push_back(std::move(phi));
  }
  return comonotone::ExpSumFunction(phis);
}

}  // namespace caplab::gen
