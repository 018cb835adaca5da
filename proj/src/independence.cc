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

#include "caplab/independence.h"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>

#include "caplab/error.h"
#include "caplab/format.h"
#include "caplab/kernels.h"
#include "caplab/random.h"

namespace caplab::independence {
namespace {

// Rectangle tables are 2^(r_i + r_j) entries per member.
constexpr std::size_t kMaxRectangleBits = 20;
constexpr std::size_t kMaxRectangleWork = std::size_t{1} << 28;
// Set tuples are stored as one 64-bit mask per urn.
constexpr std::size_t kMaxMaskBits = 62;

template <typename WitnessFn>
void Record(Report& r, double lhs, double rhs, double tolerance,
            WitnessFn&& witness) {
  const double gap = RelativeGap(lhs, rhs);
  ++r.checks;
  if (gap > tolerance) ++r.failures;
  if (r.checks == 1 || gap > r.max_gap) {
    r.max_gap = gap;
    r.lhs = lhs;
    r.rhs = rhs;
    r.witness = witness();
  }
}

void Finish(Report& r, double tolerance) {
  r.holds = r.max_gap <= tolerance;
  if (r.holds) r.witness.clear();
}

void Merge(Report& into, const Report& from, const std::string& prefix) {
  if (from.checks == 0) return;
  if (into.checks == 0 || from.max_gap > into.max_gap) {
    into.max_gap = from.max_gap;
    into.lhs = from.lhs;
    into.rhs = from.rhs;
    into.witness = prefix + from.witness;
  }
  into.checks += from.checks;
  into.failures += from.failures;
  into.holds = into.holds && from.holds;
  if (into.holds) into.witness.clear();
  into.choquet_max_gap = std::max(into.choquet_max_gap, from.choquet_max_gap);
}

std::vector<double> Exp(std::vector<double> v) {
  for (double& x : v) x = std::exp(x);
  return v;
}

PhiTuple Prefix(const PhiTuple& phis, std::size_t count) {
  return PhiTuple(phis.begin(), phis.begin() + count);
}

// Per-urn value subsets, nonempty. Enumerated when there are at most
// max_tuples of them, otherwise sampled.
std::vector<std::vector<std::uint64_t>> SetTuples(const UrnModel& m,
                                                  std::size_t max_tuples,
                                                  std::uint64_t seed) {
  const std::size_t n = m.num_urns();
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = m.urn(i).range.size();
    if (r > kMaxMaskBits) {
      throw Error(ErrorKind::kEnumerationCap,
                  "urn '" + m.urn(i).name + "' has too many distinct values");
    }
    total *= std::ldexp(1.0, static_cast<int>(r)) - 1.0;
  }
  std::vector<std::vector<std::uint64_t>> tuples;
  if (total <= static_cast<double>(max_tuples)) {
    std::vector<std::uint64_t> masks(n, 1);
    while (true) {
      tuples.push_back(masks);
      std::size_t i = n;
      while (i-- > 0) {
        const std::uint64_t full =
            (std::uint64_t{1} << m.urn(i).range.size()) - 1;
        if (masks[i] < full) {
          ++masks[i];
          break;
        }
        masks[i] = 1;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    return tuples;
  }
  Stream stream(StreamSeed(seed, 0x5e75));
  tuples.reserve(max_tuples);
  for (std::size_t t = 0; t < max_tuples; ++t) {
    std::vector<std::uint64_t> masks(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t full =
          (std::uint64_t{1} << m.urn(i).range.size()) - 1;
      masks[i] = 1 + stream.Below(full);
    }
    tuples.push_back(std::move(masks));
  }
  return tuples;
}

std::string FormatSets(const UrnModel& m,
                       const std::vector<std::uint64_t>& masks) {
  std::string out;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (i) out += ',';
    out += "A" + std::to_string(i + 1) + "=" +
           FormatValueSet(m.urn(i).range, masks[i]);
  }
  return out;
}

// rows[a][B] = sum_{b in B} t[a][b], then joint[A][B] = sum_{a in A} rows[a][B].
void RectangleTable(const std::vector<double>& t, std::size_t ri,
                    std::size_t rj, std::vector<double>& rows,
                    std::vector<double>& joint) {
  const std::size_t nb = std::size_t{1} << rj;
  const std::size_t na = std::size_t{1} << ri;
  for (std::size_t a = 0; a < ri; ++a) {
    rows[a * nb] = 0.0;
    for (std::size_t b = 1; b < nb; ++b) {
      rows[a * nb + b] = rows[a * nb + (b & (b - 1))] +
                         t[a * rj + static_cast<std::size_t>(std::countr_zero(b))];
    }
  }
  std::fill(joint.begin(), joint.begin() + nb, 0.0);
  for (std::size_t a = 1; a < na; ++a) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(a));
    const std::size_t rest = a & (a - 1);
    for (std::size_t b = 0; b < nb; ++b) {
      joint[a * nb + b] = joint[rest * nb + b] + rows[low * nb + b];
    }
  }
}

}  // namespace

std::string_view KindName(Kind kind) {
  switch (kind) {
    case Kind::kMm:
      return "mm";
    case Kind::kExponential:
      return "exp";
    case Kind::kFubiniChain:
      return "fubini";
    case Kind::kPeng:
      return "peng";
    case Kind::kProductRule:
      return "product-rule";
  }
  return "unknown";
}

Report MmIndependent(const UrnModel& m, std::size_t i, std::size_t j,
                     double tolerance) {
  if (i == j || i >= m.num_urns() || j >= m.num_urns()) {
    throw Error(ErrorKind::kInvalidArgument,
                "MM independence needs two distinct urn indices");
  }
  const std::size_t ri = m.urn(i).range.size();
  const std::size_t rj = m.urn(j).range.size();
  if (ri + rj > kMaxRectangleBits) {
    throw Error(ErrorKind::kEnumerationCap,
                "too many value subsets for the rectangle check");
  }
  const std::size_t na = std::size_t{1} << ri;
  const std::size_t nb = std::size_t{1} << rj;
  const std::size_t members = m.num_members();
  if (members > kMaxRectangleWork / (na * nb)) {
    throw Error(ErrorKind::kEnumerationCap,
                "members x rectangles exceeds the work cap");
  }
  const std::size_t outcomes = m.num_outcomes();
  std::vector<std::size_t> cell(outcomes);
  for (std::size_t o = 0; o < outcomes; ++o) {
    cell[o] = m.RangeIndex(o, i) * rj + m.RangeIndex(o, j);
  }

  std::vector<double> best(na * nb, 0.0);
  const bool parallel = members * (na * nb + outcomes) >= (1u << 15);
#pragma omp parallel num_threads(kernels::ThreadCount()) if (parallel)
  {
    std::vector<double> local(na * nb, 0.0);
    std::vector<double> t(ri * rj), rows(ri * nb), joint(na * nb);
#pragma omp for nowait
    for (std::size_t s = 0; s < members; ++s) {
      const auto row = m.member(s);
      std::fill(t.begin(), t.end(), 0.0);
      for (std::size_t o = 0; o < outcomes; ++o) t[cell[o]] += row[o];
      RectangleTable(t, ri, rj, rows, joint);
      for (std::size_t k = 0; k < local.size(); ++k) {
        local[k] = std::max(local[k], joint[k]);
      }
    }
#pragma omp critical(caplab_rectangle_merge)
    for (std::size_t k = 0; k < best.size(); ++k) {
      best[k] = std::max(best[k], local[k]);
    }
  }

  Report r;
  r.kind = Kind::kMm;
  const auto& range_i = m.urn(i).range;
  const auto& range_j = m.urn(j).range;
  for (std::size_t a = 1; a < na; ++a) {
    for (std::size_t b = 1; b < nb; ++b) {
      const double joint = best[a * nb + b];
      const double product = best[a * nb + (nb - 1)] * best[(na - 1) * nb + b];
      Record(r, joint, product, tolerance, [&] {
        return "A=" + FormatValueSet(range_i, a) +
               ",B=" + FormatValueSet(range_j, b);
      });
    }
  }
  Finish(r, tolerance);
  return r;
}

Rectangle MmRectangle(const UrnModel& m, std::size_t i, std::size_t j,
                      std::uint64_t a_mask, std::uint64_t b_mask) {
  if (i == j || i >= m.num_urns() || j >= m.num_urns()) {
    throw Error(ErrorKind::kInvalidArgument,
                "MM independence needs two distinct urn indices");
  }
  const std::size_t outcomes = m.num_outcomes();
  std::vector<bool> in_a(outcomes), in_b(outcomes), both(outcomes);
  for (std::size_t o = 0; o < outcomes; ++o) {
    in_a[o] = a_mask >> m.RangeIndex(o, i) & 1;
    in_b[o] = b_mask >> m.RangeIndex(o, j) & 1;
    both[o] = in_a[o] && in_b[o];
  }
  return Rectangle{kernels::UpperProbability(m, both),
                   kernels::UpperProbability(m, in_a) *
                       kernels::UpperProbability(m, in_b)};
}

std::vector<PhiTuple> SamplePhis(const UrnModel& m, std::size_t count,
                                 std::uint64_t seed) {
  Stream stream(StreamSeed(seed, 0xf1));
  std::vector<PhiTuple> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    PhiTuple phis(m.num_urns());
    for (std::size_t i = 0; i < m.num_urns(); ++i) {
      phis[i].resize(m.urn(i).range.size());
      for (double& v : phis[i]) v = stream.Uniform(-3.0, 3.0);
    }
    out.push_back(std::move(phis));
  }
  return out;
}

Report ExpIndependentOn(const UrnModel& m, const std::vector<PhiTuple>& phis,
                        double tolerance) {
  Report r;
  r.kind = Kind::kExponential;
  const std::size_t n = m.num_urns();
  for (std::size_t t = 0; t < phis.size(); ++t) {
    const auto f = Exp(m.PhiSum(phis[t]));
    const auto g = Exp(m.PhiSum(phis[t], 0, n - 1));
    const auto h = Exp(m.PhiSum(phis[t], n - 1, n));
    const double lhs = kernels::UpperExpectation(m, f);
    const double rhs =
        kernels::UpperExpectation(m, g) * kernels::UpperExpectation(m, h);
    Record(r, lhs, rhs, tolerance, [&] { return "phi#" + std::to_string(t); });
    const double choquet_rhs =
        kernels::UpperChoquet(m, g) * kernels::UpperChoquet(m, h);
    r.choquet_max_gap = std::max(
        r.choquet_max_gap, RelativeGap(kernels::UpperChoquet(m, f), choquet_rhs));
  }
  Finish(r, tolerance);
  return r;
}

Report ExpIndependentSteps(const UrnModel& m, const Options& options) {
  Report r;
  r.kind = Kind::kExponential;
  const std::size_t n = m.num_urns();
  const std::size_t outcomes = m.num_outcomes();
  const std::size_t members = m.num_members();
  // Outcome o falls in bin 2 * (misses among the first n-1 urns) + (miss on
  // the last urn); the step functions only see that bin.
  const std::size_t bins = 2 * n;
  std::vector<std::size_t> bin(outcomes);
  std::vector<double> hist(members * bins);
  for (const auto& masks : SetTuples(m, options.max_tuples, options.seed)) {
    for (std::size_t o = 0; o < outcomes; ++o) {
      std::size_t misses = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        misses += !(masks[i] >> m.RangeIndex(o, i) & 1);
      }
      const std::size_t last = !(masks[n - 1] >> m.RangeIndex(o, n - 1) & 1);
      bin[o] = 2 * misses + last;
    }
    const bool parallel = members * outcomes >= (1u << 15);
#pragma omp parallel for num_threads(kernels::ThreadCount()) if (parallel)
    for (std::size_t s = 0; s < members; ++s) {
      double* h = hist.data() + s * bins;
      std::fill(h, h + bins, 0.0);
      const auto row = m.member(s);
      for (std::size_t o = 0; o < outcomes; ++o) h[bin[o]] += row[o];
    }
    for (int k = 1; k <= options.max_step; ++k) {
      double lhs = 0.0, head = 0.0, tail = 0.0;
      for (std::size_t s = 0; s < members; ++s) {
        const double* h = hist.data() + s * bins;
        double joint = 0.0, first = 0.0, last = 0.0;
        for (std::size_t c = 0; c < bins; ++c) {
          const double misses = static_cast<double>(c / 2);
          const double miss_last = static_cast<double>(c % 2);
          joint += h[c] * std::exp(-k * (misses + miss_last));
          first += h[c] * std::exp(-k * misses);
          last += h[c] * std::exp(-k * miss_last);
        }
        lhs = std::max(lhs, joint);
        head = std::max(head, first);
        tail = std::max(tail, last);
      }
      Record(r, lhs, head * tail, options.tolerance, [&] {
        return "step k=" + std::to_string(k) + "," + FormatSets(m, masks);
      });
    }
  }
  Finish(r, options.tolerance);
  return r;
}

Report ExpIndependent(const UrnModel& m, const Options& options) {
  Report r = ExpIndependentOn(
      m, SamplePhis(m, options.trials, options.seed), options.tolerance);
  Merge(r, ExpIndependentSteps(m, options), "");
  return r;
}

Report FubiniIndependentChain(const UrnModel& m, const PhiTuple& phis,
                              double tolerance, Convention convention) {
  m.CheckPhis(phis);
  const std::size_t n = m.num_urns();
  const Urn& last = m.urn(n - 1);
  const auto& phi_last = phis[n - 1];
  const Capacity inner = UpperCapacity(last.credal);

  const auto sums = m.PhiSum(phis);
  const auto survival = kernels::UpperSurvival(m, sums);

  // Outer law and partial sums over the first n-1 urns; a single empty
  // outcome when there is only one urn.
  std::optional<UrnModel> prefix;
  std::vector<double> partial{0.0};
  if (n > 1) {
    prefix.emplace(m.ProductPrefix(n - 1));
    partial = prefix->PhiSum(Prefix(phis, n - 1));
  }

  Report r;
  r.kind = Kind::kFubiniChain;
  std::vector<double> h(partial.size());
  for (double alpha : comonotone::BreakpointGrid(sums)) {
    for (bool strict : {false, true}) {
      if (convention == Convention::kAtLeast && strict) continue;
      if (convention == Convention::kGreater && !strict) continue;
      for (std::size_t x = 0; x < partial.size(); ++x) {
        SubsetMask event = 0;
        for (std::size_t k = 0; k < last.x.size(); ++k) {
          const double s = partial[x] + phi_last[last.range_index[k]];
          if (strict ? s > alpha : s >= alpha) event |= SubsetMask{1} << k;
        }
        h[x] = inner(event);
      }
      const double lhs = kernels::SurvivalAt(survival, alpha, strict);
      const double rhs =
          prefix ? kernels::UpperExpectation(*prefix, h) : h[0];
      Record(r, lhs, rhs, tolerance, [&] {
        return "alpha=" + FormatNumber(alpha) + (strict ? ",>" : ",>=");
      });
    }
  }
  Finish(r, tolerance);
  return r;
}

PengResult PengCheck(const UrnModel& m, const comonotone::GridFunction& phi,
                     double tolerance) {
  if (m.num_urns() != 2) {
    throw Error(ErrorKind::kInvalidArgument, "Peng check needs two urns");
  }
  const Urn& u1 = m.urn(0);
  const Urn& u2 = m.urn(1);
  if (phi.dims() != 2 || phi.axis(0).size() != u1.range.size() ||
      phi.axis(1).size() != u2.range.size()) {
    throw Error(ErrorKind::kAxisMismatch,
                "test function must be tabulated on range(X1) x range(X2)");
  }
  const std::size_t cols = u2.range.size();
  const auto values = phi.values();
  std::vector<double> f(m.num_outcomes());
  for (std::size_t o = 0; o < f.size(); ++o) {
    f[o] = values[m.RangeIndex(o, 0) * cols + m.RangeIndex(o, 1)];
  }
  const double lhs = kernels::UpperExpectation(m, f);

  std::vector<double> inner(u1.x.size());
  std::vector<double> section(u2.x.size());
  for (std::size_t a = 0; a < u1.x.size(); ++a) {
    for (std::size_t b = 0; b < u2.x.size(); ++b) {
      section[b] = values[u1.range_index[a] * cols + u2.range_index[b]];
    }
    inner[a] = UpperEnvelope(u2.credal, section);
  }
  const double rhs = UpperEnvelope(u1.credal, inner);
  return PengResult{lhs, rhs, RelativeGap(lhs, rhs) <= tolerance};
}

FubiniTheorem FubiniTheoremSides(const UrnModel& m, const PhiTuple& phis) {
  m.CheckPhis(phis);
  const std::size_t n = m.num_urns();
  const Urn& last = m.urn(n - 1);
  const auto& phi_last = phis[n - 1];
  const Capacity inner_capacity = UpperCapacity(last.credal);

  const auto f = Exp(m.PhiSum(phis));
  FubiniTheorem out{};
  out.lhs = kernels::UpperExpectation(m, f);
  out.choquet_lhs = kernels::UpperChoquet(m, f);

  std::optional<UrnModel> prefix;
  std::vector<double> partial{0.0};
  if (n > 1) {
    prefix.emplace(m.ProductPrefix(n - 1));
    partial = prefix->PhiSum(Prefix(phis, n - 1));
  }
  std::vector<double> envelope(partial.size()), choquet(partial.size());
  std::vector<double> section(last.x.size());
  for (std::size_t x = 0; x < partial.size(); ++x) {
    for (std::size_t k = 0; k < section.size(); ++k) {
      section[k] = std::exp(partial[x] + phi_last[last.range_index[k]]);
    }
    envelope[x] = UpperEnvelope(last.credal, section);
    choquet[x] = ChoquetIntegral(inner_capacity, section);
  }
  if (prefix) {
    out.rhs = kernels::UpperExpectation(*prefix, envelope);
    out.choquet_rhs = kernels::UpperChoquet(*prefix, choquet);
  } else {
    out.rhs = envelope[0];
    out.choquet_rhs = choquet[0];
  }
  return out;
}

Report ProductRule(const UrnModel& m, const Options& options) {
  const std::size_t n = m.num_urns();
  const std::size_t outcomes = m.num_outcomes();
  // Marginal upper probabilities of every value subset, per urn.
  std::vector<std::vector<double>> marginal(n);
  std::vector<bool> event(outcomes);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = m.urn(i).range.size();
    if (r > 16) {
      throw Error(ErrorKind::kEnumerationCap,
                  "urn '" + m.urn(i).name + "' has too many distinct values");
    }
    marginal[i].resize(std::size_t{1} << r);
    for (std::size_t a = 0; a < marginal[i].size(); ++a) {
      for (std::size_t o = 0; o < outcomes; ++o) {
        event[o] = a >> m.RangeIndex(o, i) & 1;
      }
      marginal[i][a] = kernels::UpperProbability(m, event);
    }
  }
  Report r;
  r.kind = Kind::kProductRule;
  for (const auto& masks :
       SetTuples(m, options.max_tuples, StreamSeed(options.seed, 0x9d))) {
    for (std::size_t o = 0; o < outcomes; ++o) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        inside = masks[i] >> m.RangeIndex(o, i) & 1;
      }
      event[o] = inside;
    }
    double product = 1.0;
    for (std::size_t i = 0; i < n; ++i) product *= marginal[i][masks[i]];
    Record(r, kernels::UpperProbability(m, event), product, options.tolerance,
           [&] { return FormatSets(m, masks); });
  }
  Finish(r, options.tolerance);
  return r;
}

ImplicationReport ImplicationSuite(const UrnModel& m, const Options& options) {
  const auto phis = SamplePhis(m, options.trials, options.seed);

  Report fubini;
  fubini.kind = Kind::kFubiniChain;
  for (std::size_t t = 0; t < phis.size(); ++t) {
    Merge(fubini, FubiniIndependentChain(m, phis[t], options.tolerance),
          "phi#" + std::to_string(t) + ",");
  }

  const Report exp_sampled = ExpIndependentOn(m, phis, options.tolerance);
  const Report exp_steps = ExpIndependentSteps(m, options);
  Report exp = exp_sampled;
  Merge(exp, exp_steps, "");

  Report mm;
  mm.kind = Kind::kMm;
  for (std::size_t i = 0; i < m.num_urns(); ++i) {
    for (std::size_t j = i + 1; j < m.num_urns(); ++j) {
      Merge(mm, MmIndependent(m, i, j, options.tolerance),
            "urns=" + std::to_string(i + 1) + "&" + std::to_string(j + 1) +
                ",");
    }
  }

  const Report product = ProductRule(m, options);

  ImplicationReport out;
  out.reports = {fubini, exp, mm, product};
  if (fubini.holds && !exp_sampled.holds) {
    out.coherent = false;
    out.note += "Fubini chain holds but the exponential factorization fails "
                "on the same test functions. ";
  }
  if (exp_steps.holds && !mm.holds) {
    out.coherent = false;
    out.note += "Step-family factorization holds but the rectangle rule "
                "fails. ";
  }
  if (exp_steps.holds && !product.holds) {
    out.coherent = false;
    out.note += "Step-family factorization holds but the n-fold product "
                "rule fails. ";
  }
  if (!out.note.empty()) out.note.pop_back();
  return out;
}

}  // namespace caplab::independence
