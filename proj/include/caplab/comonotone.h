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

#ifndef CAPLAB_COMONOTONE_H_
#define CAPLAB_COMONOTONE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "caplab/measure.h"
#include "caplab/space.h"

namespace caplab::comonotone {

inline constexpr std::size_t kMaxGridPoints = 4096;

// A bounded test function tabulated on the points of `domain`.
struct BoundedFn {
  FiniteSpace domain;
  std::vector<double> values;
};

// Dense table over a product of finite axes. The last axis varies fastest
// in the flat index.
class GridFunction {
 public:
  GridFunction(std::vector<FiniteSpace> axes, std::vector<double> values);

  std::size_t dims() const { return axes_.size(); }
  const FiniteSpace& axis(std::size_t k) const { return axes_[k]; }
  const std::vector<FiniteSpace>& axes() const { return axes_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t flat) const { return values_[flat]; }

  double at(std::span<const std::size_t> coords) const;
  std::size_t Flat(std::span<const std::size_t> coords) const;
  std::vector<std::size_t> Coords(std::size_t flat) const;

  // The grid points as atoms, labelled "(a,b,...)" from the axis labels.
  FiniteSpace PointSpace() const;

 private:
  std::vector<FiniteSpace> axes_;
  std::vector<double> values_;
};

struct ComonotonicityCheck {
  bool comonotonic = true;
  // Points u < v (flat indices) with [f(u)-f(v)][g(u)-g(v)] < 0.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// O(N log N): sort by (f, g) and require g never to drop below the running
// maximum of g over strictly smaller f.
ComonotonicityCheck AreComonotonic(std::span<const double> f,
                                   std::span<const double> g);
// Errors: kAxisMismatch.
ComonotonicityCheck AreComonotonic(const GridFunction& f,
                                   const GridFunction& g);

// For d == 2. axis 0: the sections f(x, .) are pairwise comonotonic
// ("comonotonic x1-sections"); axis 1: the sections f(., y) are.
bool HasComonotonicSections(const GridFunction& f, std::size_t axis);
// Both section families. Errors: kAxisMismatch unless d == 2.
bool IsSliceComonotonic(const GridFunction& f);

// exp(sum_i phi_i(x_i)) over the product of the phi domains.
GridFunction ExpSumFunction(std::span<const BoundedFn> phis);

// Largest i / 2^p with i / 2^p <= r. Errors: kNegativeInput.
double DyadicFloor(double r, int p);

// The chain A_1 supset A_2 supset ... with A_i = {f >= i / 2^p},
// i = 1..floor(max f * 2^p). Equal consecutive sets are stored once as a
// run; per-level accessors expand runs on demand.
class ChainDecomposition {
 public:
  struct Run {
    std::size_t first_level;  // 1-based, inclusive
    std::size_t last_level;   // inclusive
    std::vector<bool> members;
  };

  int resolution() const { return resolution_; }
  std::size_t grid_size() const { return grid_size_; }
  std::size_t num_levels() const { return num_levels_; }
  const std::vector<Run>& runs() const { return runs_; }

  // alpha_i = i / 2^p, i in [1, num_levels()].
  double level(std::size_t i) const;
  // alpha_1 for i == 1, alpha_i - alpha_{i-1} otherwise; always 2^-p.
  double weight(std::size_t i) const;
  const std::vector<bool>& set(std::size_t i) const;
  double RunWeight(const Run& run) const;

  // f_p = sum_i weight(i) * I_{A_i}, per grid point.
  std::vector<double> Reconstruct() const;

 private:
  friend ChainDecomposition ChainDecompose(const GridFunction&, int);
  int resolution_ = 0;
  std::size_t grid_size_ = 0;
  std::size_t num_levels_ = 0;
  std::vector<Run> runs_;
};

// Errors: kNonPositiveFunction, kInvalidArgument for p < 0.
ChainDecomposition ChainDecompose(const GridFunction& f, int p);

// sum_runs weight * V(A_run), V on the grid points as atoms.
double ChoquetViaChain(const Capacity& v, const ChainDecomposition& chain);

// Distinct values ascending, interleaved with their midpoints, plus one point
// below the minimum and one above the maximum. Every threshold event
// {f >= a} or {f > a} equals the event at one of these points.
std::vector<double> BreakpointGrid(std::vector<double> values);

// Indicator values of a chain set.
std::vector<double> Indicator(const std::vector<bool>& set);

}  // namespace caplab::comonotone

#endif  // CAPLAB_COMONOTONE_H_
