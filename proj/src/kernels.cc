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

#include "caplab/kernels.h"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <string>

#include "caplab/error.h"
#include "caplab/measure.h"

namespace caplab::kernels {
namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kParallelWork = std::size_t{1} << 15;

int g_threads = 0;

int Team() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

std::size_t RowCount(std::span<const double> table, std::size_t n,
                     std::span<const double> f) {
  if (n == 0 || table.size() % n != 0 || table.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "malformed member table");
  }
  if (f.size() != n) {
    throw Error(ErrorKind::kInvalidArgument,
                "function has " + std::to_string(f.size()) +
                    " values, expected " + std::to_string(n));
  }
  return table.size() / n;
}

double Dot(const double* row, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += row[k] * f[k];
  return s;
}

// Descending order of f plus the end offset of every tie group.
struct Groups {
  std::vector<std::size_t> order;
  std::vector<std::size_t> ends;
  std::vector<double> levels;
};

Groups GroupDescending(std::span<const double> f) {
  Groups g;
  g.order = DescendingOrder(f);
  std::size_t k = 0;
  while (k < g.order.size()) {
    const double level = f[g.order[k]];
    while (k < g.order.size() && f[g.order[k]] == level) ++k;
    g.ends.push_back(k);
    g.levels.push_back(level);
  }
  return g;
}

void AccumulateSurvival(const double* row, const Groups& g,
                        std::vector<double>& best) {
  double cumulative = 0.0;
  std::size_t k = 0;
  for (std::size_t grp = 0; grp < g.ends.size(); ++grp) {
    for (; k < g.ends[grp]; ++k) cumulative += row[g.order[k]];
    best[grp] = std::max(best[grp], cumulative);
  }
}

}  // namespace

void SetThreadCount(int threads) { g_threads = threads; }
int ThreadCount() { return Team(); }

double UpperExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f) {
  const std::size_t rows = RowCount(table, num_outcomes, f);
  const double* data = table.data();
  double best = -std::numeric_limits<double>::infinity();
  const bool parallel = rows * num_outcomes >= kParallelWork;
#pragma omp parallel for reduction(max : best) num_threads(Team()) if (parallel)
  for (std::size_t r = 0; r < rows; ++r) {
    best = std::max(best, Dot(data + r * num_outcomes, f));
  }
  return best;
}

double LowerExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f) {
  const std::size_t rows = RowCount(table, num_outcomes, f);
  const double* data = table.data();
  double best = std::numeric_limits<double>::infinity();
  const bool parallel = rows * num_outcomes >= kParallelWork;
#pragma omp parallel for reduction(min : best) num_threads(Team()) if (parallel)
  for (std::size_t r = 0; r < rows; ++r) {
    best = std::min(best, Dot(data + r * num_outcomes, f));
  }
  return best;
}

Survival UpperSurvival(std::span<const double> table, std::size_t num_outcomes,
                       std::span<const double> f) {
  const std::size_t rows = RowCount(table, num_outcomes, f);
  const Groups g = GroupDescending(f);
  std::vector<double> best(g.ends.size(), 0.0);
  const bool parallel = rows * num_outcomes >= kParallelWork;
#pragma omp parallel num_threads(Team()) if (parallel)
  {
    std::vector<double> local(g.ends.size(), 0.0);
#pragma omp for nowait
    for (std::size_t r = 0; r < rows; ++r) {
      AccumulateSurvival(table.data() + r * num_outcomes, g, local);
    }
#pragma omp critical(caplab_survival_merge)
    for (std::size_t i = 0; i < best.size(); ++i) {
      best[i] = std::max(best[i], local[i]);
    }
  }
  return Survival{g.levels, std::move(best)};
}

double SurvivalAt(const Survival& s, double alpha, bool strict) {
  // Levels descend, so the answer sits at the last level still inside.
  double value = 0.0;
  for (std::size_t g = 0; g < s.levels.size(); ++g) {
    if (strict ? !(s.levels[g] > alpha) : !(s.levels[g] >= alpha)) break;
    value = s.upper[g];
  }
  return value;
}

double ChoquetFromSurvival(const Survival& s) {
  double total = 0.0;
  double previous = 0.0;
  for (std::size_t g = 0; g < s.levels.size(); ++g) {
    total += s.levels[g] * (s.upper[g] - previous);
    previous = s.upper[g];
  }
  return total;
}

double UpperExpectation(const UrnModel& m, std::span<const double> f) {
  return UpperExpectation(m.member_table(), m.num_outcomes(), f);
}

double LowerExpectation(const UrnModel& m, std::span<const double> f) {
  return LowerExpectation(m.member_table(), m.num_outcomes(), f);
}

Survival UpperSurvival(const UrnModel& m, std::span<const double> f) {
  return UpperSurvival(m.member_table(), m.num_outcomes(), f);
}

double UpperChoquet(const UrnModel& m, std::span<const double> f) {
  return ChoquetFromSurvival(UpperSurvival(m, f));
}

double UpperProbability(const UrnModel& m, const std::vector<bool>& event) {
  std::vector<double> indicator(event.size());
  for (std::size_t k = 0; k < event.size(); ++k) indicator[k] = event[k];
  return UpperExpectation(m, indicator);
}

namespace serial {

double UpperExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f) {
  const std::size_t rows = RowCount(table, num_outcomes, f);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    best = std::max(best, Dot(table.data() + r * num_outcomes, f));
  }
  return best;
}

double LowerExpectation(std::span<const double> table,
                        std::size_t num_outcomes, std::span<const double> f) {
  const std::size_t rows = RowCount(table, num_outcomes, f);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    best = std::min(best, Dot(table.data() + r * num_outcomes, f));
  }
  return best;
}

Survival UpperSurvival(std::span<const double> table, std::size_t num_outcomes,
                       std::span<const double> f) {
  const std::size_t rows = RowCount(table, num_outcomes, f);
  const Groups g = GroupDescending(f);
  std::vector<double> best(g.ends.size(), 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    AccumulateSurvival(table.data() + r * num_outcomes, g, best);
  }
  return Survival{g.levels, std::move(best)};
}

}  // namespace serial
}  // namespace caplab::kernels
