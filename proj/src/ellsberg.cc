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

#include "caplab/ellsberg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "caplab/comonotone.h"
#include "caplab/error.h"
#include "caplab/format.h"
#include "caplab/kernels.h"

namespace caplab::ellsberg {

SortedUrn::SortedUrn(Urn urn) : urn_(std::move(urn)) {
  perm_.resize(urn_.x.size());
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  std::stable_sort(perm_.begin(), perm_.end(),
                   [&](std::size_t a, std::size_t b) {
                     return urn_.x[a] < urn_.x[b];
                   });
}

ProbabilityVector BuildPprime(const CredalSet& credal,
                              std::span<const double> y) {
  const std::size_t atoms = credal.space().size();
  if (y.size() != atoms) {
    throw Error(ErrorKind::kInvalidArgument,
                "variable must have one value per atom");
  }
  std::vector<double> values(y.begin(), y.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const std::size_t levels = values.size();
  std::vector<std::size_t> level_of(atoms);
  for (std::size_t k = 0; k < atoms; ++k) {
    level_of[k] = static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), y[k]) - values.begin());
  }

  // tails[l][j] = P_l(y >= values[j]), accumulated from the top.
  const std::size_t members = credal.size();
  std::vector<std::vector<double>> mass(members,
                                        std::vector<double>(levels, 0.0));
  std::vector<std::vector<double>> tails(members,
                                         std::vector<double>(levels + 1, 0.0));
  for (std::size_t l = 0; l < members; ++l) {
    for (std::size_t k = 0; k < atoms; ++k) mass[l][level_of[k]] += credal[l][k];
    for (std::size_t j = levels; j-- > 0;) {
      tails[l][j] = tails[l][j + 1] + mass[l][j];
    }
  }

  std::vector<double> p(atoms, 0.0);
  double upper_above = 0.0;
  for (std::size_t j = levels; j-- > 0;) {
    std::size_t argmax = 0;
    for (std::size_t l = 1; l < members; ++l) {
      if (tails[l][j] > tails[argmax][j]) argmax = l;
    }
    const double upper = tails[argmax][j];
    const double level_mass = upper - upper_above;
    upper_above = upper;

    std::size_t tied = 0;
    for (std::size_t k = 0; k < atoms; ++k) tied += level_of[k] == j;
    const double conditional_base = mass[argmax][j];
    for (std::size_t k = 0; k < atoms; ++k) {
      if (level_of[k] != j) continue;
      if (tied == 1) {
        p[k] = level_mass;
      } else if (conditional_base > 0.0) {
        p[k] = level_mass * (credal[argmax][k] / conditional_base);
      } else {
        p[k] = level_mass / static_cast<double>(tied);
      }
    }
  }
  return ProbabilityVector(credal.space(), std::move(p));
}

ProbabilityVector BuildPprime(const SortedUrn& u) {
  return BuildPprime(u.urn().credal, u.urn().x.values());
}

ProbabilityVector PprimeForPhi(const SortedUrn& u,
                               std::span<const double> phi) {
  const Urn& urn = u.urn();
  if (phi.size() != urn.range.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "test function needs one value per distinct outcome value");
  }
  std::vector<double> y(urn.x.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = phi[urn.range_index[k]];
  return BuildPprime(urn.credal, y);
}

PprimeCheck VerifyPprime(const CredalSet& credal, std::span<const double> y,
                         const ProbabilityVector& pprime, double tolerance) {
  PprimeCheck out;
  const auto p = pprime.p();
  double sum = 0.0;
  bool nonnegative = true;
  for (double q : p) {
    nonnegative = nonnegative && q >= -tolerance;
    sum += q;
  }
  out.is_prob = nonnegative && std::fabs(sum - 1.0) <= tolerance;

  const Capacity upper = UpperCapacity(credal);
  const auto subsets = pprime.SubsetTable();
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    const double excess = subsets[a] - upper(static_cast<SubsetMask>(a));
    if (excess > out.max_core_excess) {
      out.max_core_excess = excess;
      out.core_witness = static_cast<SubsetMask>(a);
    }
  }
  out.in_core = out.max_core_excess <= tolerance;

  for (double alpha : comonotone::BreakpointGrid({y.begin(), y.end()})) {
    double dominant = 0.0;
    for (const auto& member : credal.members()) {
      double tail = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] >= alpha) tail += member[k];
      }
      dominant = std::max(dominant, tail);
    }
    double tail = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (y[k] >= alpha) tail += p[k];
    }
    out.max_survival_gap =
        std::max(out.max_survival_gap, std::fabs(dominant - tail));
  }
  out.survival_match = out.max_survival_gap <= tolerance;
  return out;
}

PprimeCheck VerifyPprime(const SortedUrn& u, const ProbabilityVector& pprime,
                         double tolerance) {
  return VerifyPprime(u.urn().credal, u.urn().x.values(), pprime, tolerance);
}

ProductFubiniReport VerifyProductFubini(const UrnModel& m,
                                        const PhiTuple& phis,
                                        double tolerance) {
  if (!m.is_product()) {
    throw Error(ErrorKind::kInvalidArgument,
                "product Fubini check needs a product-law model");
  }
  m.CheckPhis(phis);
  const std::size_t n = m.num_urns();
  const Urn& last = m.urn(n - 1);
  const auto& phi_last = phis[n - 1];
  const Capacity inner = UpperCapacity(last.credal);
  const ProbabilityVector pprime = PprimeForPhi(SortedUrn(last), phi_last);

  const auto sums = m.PhiSum(phis);
  const auto survival = kernels::UpperSurvival(m, sums);

  std::optional<UrnModel> prefix;
  std::vector<double> partial{0.0};
  if (n > 1) {
    prefix.emplace(m.ProductPrefix(n - 1));
    partial = prefix->PhiSum(PhiTuple(phis.begin(), phis.begin() + (n - 1)));
  }

  ProductFubiniReport report;
  std::vector<double> by_capacity(partial.size()), by_pprime(partial.size());
  for (double alpha : comonotone::BreakpointGrid(sums)) {
    for (std::size_t x = 0; x < partial.size(); ++x) {
      SubsetMask event = 0;
      for (std::size_t k = 0; k < last.x.size(); ++k) {
        if (partial[x] + phi_last[last.range_index[k]] >= alpha) {
          event |= SubsetMask{1} << k;
        }
      }
      by_capacity[x] = inner(event);
      by_pprime[x] = pprime.Measure(event);
    }
    ThresholdRow row{};
    row.alpha = alpha;
    row.lhs = kernels::SurvivalAt(survival, alpha);
    row.iterated =
        prefix ? kernels::UpperExpectation(*prefix, by_capacity) : by_capacity[0];
    row.pprime_side =
        prefix ? kernels::UpperExpectation(*prefix, by_pprime) : by_pprime[0];
    row.gap = std::fabs(row.lhs - row.iterated);
    row.upper_ok = row.lhs <= row.iterated + tolerance;
    row.lower_ok = row.pprime_side <= row.lhs + tolerance;
    if (report.rows.empty() || row.gap > report.max_gap) {
      report.max_gap = row.gap;
      report.witness = "alpha=" + FormatNumber(alpha);
    }
    report.rows.push_back(row);
  }
  report.holds = report.max_gap <= tolerance;
  return report;
}

}  // namespace caplab::ellsberg
