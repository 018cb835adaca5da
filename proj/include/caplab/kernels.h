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

#ifndef CAPLAB_KERNELS_H_
#define CAPLAB_KERNELS_H_

// Envelope kernels over a row-major member x outcome probability table.
// The default versions split members across OpenMP threads; the ones in
// `serial` are the single-threaded references they are tested against.
// Reductions are max/min only, so both produce bit-identical results for
// any thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "caplab/urn_model.h"

namespace caplab::kernels {

// Upper survival of f: for the distinct values d_1 > d_2 > ... of f,
// upper[g] = max_members P(f >= d_g).
struct Survival {
  std::vector<double> levels;
  std::vector<double> upper;
};

double UpperExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f);
double LowerExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f);
Survival UpperSurvival(std::span<const double> table, std::size_t num_outcomes,
                       std::span<const double> f);

// max_members P(f >= alpha), or P(f > alpha) when strict.
double SurvivalAt(const Survival& s, double alpha, bool strict = false);

// Choquet integral of f against A -> max_members P(A), from its survival.
double ChoquetFromSurvival(const Survival& s);

// Model overloads.
double UpperExpectation(const UrnModel& m, std::span<const double> f);
double LowerExpectation(const UrnModel& m, std::span<const double> f);
Survival UpperSurvival(const UrnModel& m, std::span<const double> f);
double UpperChoquet(const UrnModel& m, std::span<const double> f);
// max_members P(event), event given as a 0/1 membership per outcome.
double UpperProbability(const UrnModel& m, const std::vector<bool>& event);

// Sets the OpenMP team size used by every parallel kernel (<= 0: runtime
// default).
void SetThreadCount(int threads);
int ThreadCount();

namespace serial {

double UpperExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f);
double LowerExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f);
Survival UpperSurvival(std::span<const double> table, std::size_t num_outcomes,
                       std::span<const double> f);

}  // namespace serial
}  // namespace caplab::kernels

#endif  // CAPLAB_KERNELS_H_
