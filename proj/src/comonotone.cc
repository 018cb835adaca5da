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

#include "caplab/comonotone.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "caplab/error.h"

namespace caplab::comonotone {

GridFunction::GridFunction(std::vector<FiniteSpace> axes,
                           std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "grid needs at least one axis");
  }
  std::size_t expected = 1;
  for (const auto& a : axes_) {
    expected *= a.size();
    if (expected > kMaxGridPoints) {
      throw Error(ErrorKind::kTooLarge,
                  "grid exceeds " + std::to_string(kMaxGridPoints) + " points");
    }
  }
  if (values_.size() != expected) {
    throw Error(ErrorKind::kInvalidArgument,
                "grid table size does not match the axes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kInvariantError, "grid values must be finite");
    }
  }
}

std::size_t GridFunction::Flat(std::span<const std::size_t> coords) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    flat = flat * axes_[k].size() + coords[k];
  }
  return flat;
}

double GridFunction::at(std::span<const std::size_t> coords) const {
  return values_[Flat(coords)];
}

std::vector<std::size_t> GridFunction::Coords(std::size_t flat) const {
  std::vector<std::size_t> coords(axes_.size());
  for (std::size_t k = axes_.size(); k-- > 0;) {
    coords[k] = flat % axes_[k].size();
    flat /= axes_[k].size();
  }
  return coords;
}

FiniteSpace GridFunction::PointSpace() const {
  std::vector<std::string> labels;
  labels.reserve(values_.size());
  for (std::size_t flat = 0; flat < values_.size(); ++flat) {
    const auto c = Coords(flat);
    std::string label = "(";
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) label += ',';
      label += axes_[k].label(c[k]);
    }
    labels.push_back(label + ")");
  }
  return FiniteSpace(std::move(labels));
}

ComonotonicityCheck AreComonotonic(std::span<const double> f,
                                   std::span<const double> g) {
  if (f.size() != g.size()) {
    throw Error(ErrorKind::kAxisMismatch,
                "comonotonicity needs functions on the same points");
  }
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (f[a] != f[b]) return f[a] < f[b];
    if (g[a] != g[b]) return g[a] < g[b];
    return a < b;
  });
  ComonotonicityCheck out;
  bool have_prev = false;
  double prev_max_g = 0.0;
  std::size_t prev_argmax = 0;
  std::size_t k = 0;
  while (k < order.size()) {
    std::size_t end = k;
    while (end < order.size() && f[order[end]] == f[order[k]]) ++end;
    // Group sorted by g ascending: its first element has the smallest g.
    if (have_prev && g[order[k]] < prev_max_g) {
      out.comonotonic = false;
      out.witness = std::minmax(prev_argmax, order[k]);
      return out;
    }
    const std::size_t group_argmax = order[end - 1];
    if (!have_prev || g[group_argmax] > prev_max_g) {
      prev_max_g = g[group_argmax];
      prev_argmax = group_argmax;
    }
    have_prev = true;
    k = end;
  }
  return out;
}

ComonotonicityCheck AreComonotonic(const GridFunction& f,
                                   const GridFunction& g) {
  if (f.axes() != g.axes()) {
    throw Error(ErrorKind::kAxisMismatch,
                "comonotonicity needs identical axes");
  }
  return AreComonotonic(f.values(), g.values());
}

namespace {

std::vector<double> Section(const GridFunction& f, std::size_t axis,
                            std::size_t fixed) {
  const std::size_t n0 = f.axis(0).size();
  const std::size_t n1 = f.axis(1).size();
  std::vector<double> s;
  if (axis == 0) {
    for (std::size_t y = 0; y < n1; ++y) s.push_back(f[fixed * n1 + y]);
  } else {
    for (std::size_t x = 0; x < n0; ++x) s.push_back(f[x * n1 + fixed]);
  }
  return s;
}

}  // namespace

bool HasComonotonicSections(const GridFunction& f, std::size_t axis) {
  if (f.dims() != 2 || axis > 1) {
    throw Error(ErrorKind::kAxisMismatch,
                "section comonotonicity is defined for two axes");
  }
  const std::size_t count = f.axis(axis).size();
  std::vector<std::vector<double>> sections;
  sections.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    sections.push_back(Section(f, axis, i));
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (!AreComonotonic(sections[i], sections[j]).comonotonic) return false;
    }
  }
  return true;
}

bool IsSliceComonotonic(const GridFunction& f) {
  return HasComonotonicSections(f, 0) && HasComonotonicSections(f, 1);
}

GridFunction ExpSumFunction(std::span<const BoundedFn> phis) {
  std::vector<FiniteSpace> axes;
  std::size_t total = 1;
  for (const auto& phi : phis) {
    if (phi.values.size() != phi.domain.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "test function needs one value per domain point");
    }
    for (double v : phi.values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kInvariantError,
                    "test function values must be finite");
      }
    }
    axes.push_back(phi.domain);
    total *= phi.domain.size();
    if (total > kMaxGridPoints) {
      throw Error(ErrorKind::kTooLarge, "exp-sum grid is too large");
    }
  }
  std::vector<double> values(total);
  std::vector<std::size_t> coords(phis.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double exponent = 0.0;
    for (std::size_t k = 0; k < phis.size(); ++k) {
      exponent += phis[k].values[coords[k]];
    }
    values[flat] = std::exp(exponent);
    for (std::size_t k = phis.size(); k-- > 0;) {
      if (++coords[k] < phis[k].domain.size()) break;
      coords[k] = 0;
    }
  }
  return GridFunction(std::move(axes), std::move(values));
}

double DyadicFloor(double r, int p) {
  if (r < 0.0 || std::isnan(r)) {
    throw Error(ErrorKind::kNegativeInput, "dyadic floor needs r >= 0");
  }
  if (p < 0) {
    throw Error(ErrorKind::kInvalidArgument, "dyadic floor needs p >= 0");
  }
  // Scaling by 2^p is exact, so is the floor.
  return std::ldexp(std::floor(std::ldexp(r, p)), -p);
}

double ChainDecomposition::level(std::size_t i) const {
  return std::ldexp(static_cast<double>(i), -resolution_);
}

double ChainDecomposition::weight(std::size_t) const {
  return std::ldexp(1.0, -resolution_);
}

const std::vector<bool>& ChainDecomposition::set(std::size_t i) const {
  for (const auto& run : runs_) {
    if (i >= run.first_level && i <= run.last_level) return run.members;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "chain level " + std::to_string(i) + " out of range");
}

double ChainDecomposition::RunWeight(const Run& run) const {
  return std::ldexp(static_cast<double>(run.last_level - run.first_level + 1),
                    -resolution_);
}

std::vector<double> ChainDecomposition::Reconstruct() const {
  std::vector<double> fp(grid_size_, 0.0);
  for (const auto& run : runs_) {
    const double w = RunWeight(run);
    for (std::size_t k = 0; k < grid_size_; ++k) {
      if (run.members[k]) fp[k] += w;
    }
  }
  return fp;
}

ChainDecomposition ChainDecompose(const GridFunction& f, int p) {
  if (p < 0 || p > 40) {
    throw Error(ErrorKind::kInvalidArgument, "resolution must be in [0, 40]");
  }
  const auto values = f.values();
  for (double v : values) {
    if (!(v > 0.0)) {
      throw Error(ErrorKind::kNonPositiveFunction,
                  "chain decomposition needs a strictly positive function");
    }
  }
  std::vector<double> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  ChainDecomposition chain;
  chain.resolution_ = p;
  chain.grid_size_ = values.size();
  // Levels in (floor(v_{j-1} 2^p), floor(v_j 2^p)] all cut out {f >= v_j}.
  std::size_t previous_top = 0;
  for (double v : distinct) {
    const auto top = static_cast<std::size_t>(std::floor(std::ldexp(v, p)));
    if (top > previous_top) {
      ChainDecomposition::Run run;
      run.first_level = previous_top + 1;
      run.last_level = top;
      run.members.resize(values.size());
      for (std::size_t k = 0; k < values.size(); ++k) {
        run.members[k] = values[k] >= v;
      }
      chain.runs_.push_back(std::move(run));
      previous_top = top;
    }
  }
  chain.num_levels_ = previous_top;
  return chain;
}

double ChoquetViaChain(const Capacity& v, const ChainDecomposition& chain) {
  if (v.space().size() != chain.grid_size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "capacity must be defined on the grid points");
  }
  RequireAtMost(v.space(), kMaxTableAtoms, "chain Choquet integral");
  double total = 0.0;
  for (const auto& run : chain.runs()) {
    SubsetMask mask = 0;
    for (std::size_t k = 0; k < run.members.size(); ++k) {
      if (run.members[k]) mask |= SubsetMask{1} << k;
    }
    total += chain.RunWeight(run) * v(mask);
  }
  return total;
}

std::vector<double> BreakpointGrid(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> grid;
  if (values.empty()) return grid;
  grid.push_back(values.front() - 1.0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) grid.push_back(0.5 * (values[k - 1] + values[k]));
    grid.push_back(values[k]);
  }
  grid.push_back(values.back() + 1.0);
  return grid;
}

std::vector<double> Indicator(const std::vector<bool>& set) {
  std::vector<double> out(set.size());
  for (std::size_t k = 0; k < set.size(); ++k) out[k] = set[k] ? 1.0 : 0.0;
  return out;
}

}  // namespace caplab::comonotone
