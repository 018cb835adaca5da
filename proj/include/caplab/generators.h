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

#ifndef CAPLAB_GENERATORS_H_
#define CAPLAB_GENERATORS_H_

// Seeded random instances for property suites and benchmarks.

#include <cstddef>
#include <string>

#include "caplab/comonotone.h"
#include "caplab/measure.h"
#include "caplab/random.h"
#include "caplab/urn_model.h"

namespace caplab::gen {

// Uniform on the probability simplex (Dirichlet with all parameters 1).
ProbabilityVector RandomProbability(Stream& stream, const FiniteSpace& space);

CredalSet RandomCredal(Stream& stream, const FiniteSpace& space,
                       std::size_t members);

// Distinct integer values drawn without replacement from [-5, 5], so
// atoms <= 11.
Urn RandomUrn(Stream& stream, std::size_t atoms, std::size_t members,
              const std::string& name = "urn");

// Product-law model of `urns` urns, each with 2..max_values atoms and
// 1..max_members members.
UrnModel RandomProductModel(Stream& stream, std::size_t urns,
                            std::size_t max_values, std::size_t max_members);

// A -> g(P(A)) with g(t) = t^a, a uniform in [0.2, 1], P random. Concave
// distortions of a probability are 2-alternating.
Capacity RandomConcaveDistortion(Stream& stream, const FiniteSpace& space);

// exp(phi_1(x) + phi_2(y)) on a random 2-axis grid with 2..max_side points
// per axis and phi values uniform in [-1, 1].
comonotone::GridFunction RandomExpSumGrid(Stream& stream,
                                          std::size_t max_side);

}  // namespace caplab::gen

#endif  // CAPLAB_GENERATORS_H_
