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

#include "caplab/wlln.h"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "caplab/error.h"
#include "caplab/kernels.h"
#include "caplab/random.h"

namespace caplab::wlln {
namespace {

void RequirePositive(int n) {
  if (n < 1) {
    throw Error(ErrorKind::kInvalidArgument, "sample size must be >= 1");
  }
}

double Binomial(double top, double bottom) {
  double out = 1.0;
  for (double k = 1; k <= bottom; ++k) out = out * (top - bottom + k) / k;
  return out;
}

// The draw distribution of every member over the value range of the urn.
std::vector<std::vector<double>> ValueLaws(const Urn& urn) {
  std::vector<std::vector<double>> laws;
  for (const auto& member : urn.credal.members()) {
    std::vector<double> law(urn.range.size(), 0.0);
    for (std::size_t k = 0; k < urn.x.size(); ++k) {
      law[urn.range_index[k]] += member[k];
    }
    laws.push_back(std::move(law));
  }
  return laws;
}

// Count vectors (c_1, ..., c_members) summing to n, lexicographic.
void Multisets(std::size_t members, int n, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (current.size() + 1 == members) {
    current.push_back(n);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int c = n; c >= 0; --c) {
    current.push_back(c);
    Multisets(members, n - c, current, out);
    current.pop_back();
  }
}

struct ExactSetup {
  std::vector<std::vector<double>> laws;
  std::vector<std::vector<int>> multisets;
  int bits;
};

ExactSetup PrepareExact(const Urn& urn, int n) {
  RequirePositive(n);
  ExactSetup setup;
  setup.laws = ValueLaws(urn);
  const std::size_t members = setup.laws.size();
  const std::size_t r = urn.range.size();
  setup.bits = std::bit_width(static_cast<unsigned>(n));
  const double multisets = Binomial(n + members - 1.0, members - 1.0);
  const double states = Binomial(n + r - 1.0, r - 1.0);
  if (multisets * states > kMaxExactWork ||
      static_cast<std::size_t>(setup.bits) * r > 64) {
    throw Error(ErrorKind::kEnumerationCap,
                "exact enumeration for n=" + std::to_string(n) +
                    " exceeds the work cap");
  }
  std::vector<int> current;
  Multisets(members, n, current, setup.multisets);
  return setup;
}

// P(lo <= S_n / n <= hi) when member l is drawn counts[l] times. States are
// value-count vectors packed `bits` bits per value, so the sum of a state is
// computed once, independently of the draw order.
double MultisetProbability(const Urn& urn, const ExactSetup& setup,
                           const std::vector<int>& counts, int n, double lo,
                           double hi) {
  const std::size_t r = urn.range.size();
  std::map<std::uint64_t, double> dist{{0, 1.0}};
  for (std::size_t l = 0; l < counts.size(); ++l) {
    const auto& law = setup.laws[l];
    for (int c = 0; c < counts[l]; ++c) {
      std::map<std::uint64_t, double> next;
      for (const auto& [state, p] : dist) {
        for (std::size_t v = 0; v < r; ++v) {
          if (law[v] == 0.0) continue;
          next[state + (std::uint64_t{1} << (v * setup.bits))] += p * law[v];
        }
      }
      dist = std::move(next);
    }
  }
  const std::uint64_t field = (std::uint64_t{1} << setup.bits) - 1;
  double inside = 0.0;
  for (const auto& [state, p] : dist) {
    double sum = 0.0;
    for (std::size_t v = 0; v < r; ++v) {
      sum += static_cast<double>(state >> (v * setup.bits) & field) *
             urn.range[v];
    }
    const double mean = sum / n;
    if (mean >= lo && mean <= hi) inside += p;
  }
  return inside;
}

double DrawValue(Stream& stream, const Scenario& s, int i) {
  double mu = 0.0, sigma = 0.0;
  switch (s.strategy) {
    case Strategy::kUniformRandom:
      mu = stream.Uniform(s.mean_lo, s.mean_hi);
      sigma = stream.Uniform(s.sigma_lo, s.sigma_hi);
      break;
    case Strategy::kExtremeHigh:
      mu = s.mean_hi;
      sigma = s.sigma_hi;
      break;
    case Strategy::kExtremeLow:
      mu = s.mean_lo;
      sigma = s.sigma_hi;
      break;
    case Strategy::kOscillating:
      mu = i % 2 == 0 ? s.mean_hi : s.mean_lo;
      sigma = s.sigma_hi;
      break;
  }
  return mu + sigma * InverseNormalCdf(stream.OpenUniform());
}

Sample RunRepetition(const Scenario& s, std::size_t n_index, std::size_t rep,
                     double lo, double hi) {
  const int n = s.n_list[n_index];
  Stream stream(StreamSeed(s.seed, static_cast<std::uint64_t>(n), rep));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += DrawValue(stream, s, i);
  const double mean = sum / n;
  return Sample{n, rep, mean, mean >= lo && mean <= hi};
}

SimulationReport EmptyReport(const Scenario& s) {
  s.Validate();
  SimulationReport report;
  report.scenario = s;
  report.band_lo = s.mean_lo - s.epsilon;
  report.band_hi = s.mean_hi + s.epsilon;
  report.samples.resize(s.n_list.size() * s.reps);
  return report;
}

}  // namespace

double TruncationBound(int n) {
  RequirePositive(n);
  return n / std::log1p(static_cast<double>(n));
}

double Truncate(double x, int n) {
  const double b = TruncationBound(n);
  return std::clamp(x, -b, b);
}

RandomVariable CenterTruncated(const CredalSet& credal, const RandomVariable& x,
                               int n, double mu_bar, double tolerance) {
  const double computed = UpperEnvelope(credal, x);
  if (std::fabs(computed - mu_bar) > tolerance) {
    throw Error(ErrorKind::kMeanMismatch,
                "supplied upper mean " + std::to_string(mu_bar) +
                    " differs from the envelope " + std::to_string(computed));
  }
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = Truncate(x[k] - mu_bar, n);
  const double shift = UpperEnvelope(credal, y);
  for (double& v : y) v = v - shift + mu_bar;
  return RandomVariable(x.space(), std::move(y));
}

double ExactLowerProbInterval(const Urn& urn, int n, double lo, double hi) {
  const ExactSetup setup = PrepareExact(urn, n);
  const auto& multisets = setup.multisets;
  double best = std::numeric_limits<double>::infinity();
  const long count = static_cast<long>(multisets.size());
#pragma omp parallel for reduction(min : best) schedule(dynamic) \
    num_threads(kernels::ThreadCount()) if (count > 1)
  for (long t = 0; t < count; ++t) {
    best = std::min(best,
                    MultisetProbability(urn, setup, multisets[t], n, lo, hi));
  }
  return best;
}

double ExactLowerProb(const Urn& urn, int n, double eps) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "epsilon must be >= 0");
  }
  return ExactLowerProbInterval(urn, n, LowerEnvelope(urn.credal, urn.x) - eps,
                                UpperEnvelope(urn.credal, urn.x) + eps);
}

MarkovGap ExpMarkovGap(const Urn& urn, int n, double eps, double mult) {
  RequirePositive(n);
  if (!(mult > 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "multiplier must exceed 1");
  }
  const std::size_t members = urn.credal.size();
  const std::size_t atoms = urn.x.size();
  const double work = std::pow(static_cast<double>(members), n) *
                      std::pow(static_cast<double>(atoms), n);
  if (work > kMaxExactWork) {
    throw Error(ErrorKind::kEnumerationCap,
                "selections x outcomes exceeds the work cap");
  }
  const double mu_bar = UpperEnvelope(urn.credal, urn.x);
  // deviation[k][a]: Xbar_{k+1} - mu_bar on atom a.
  std::vector<std::vector<double>> deviation(n, std::vector<double>(atoms));
  for (int k = 0; k < n; ++k) {
    const auto centered = CenterTruncated(urn.credal, urn.x, k + 1, mu_bar);
    for (std::size_t a = 0; a < atoms; ++a) {
      deviation[k][a] = centered[a] - mu_bar;
    }
  }
  const double log_n = std::log1p(static_cast<double>(n));
  const double lambda = mult * log_n / n;
  const double threshold = n * eps;

  std::size_t selections = 1, outcomes = 1;
  for (int k = 0; k < n; ++k) {
    selections *= members;
    outcomes *= atoms;
  }
  double lhs = 0.0, mgf = 0.0;
  const long count = static_cast<long>(selections);
#pragma omp parallel for reduction(max : lhs, mgf) \
    num_threads(kernels::ThreadCount()) if (count * outcomes >= (1 << 15))
  for (long s = 0; s < count; ++s) {
    std::vector<std::size_t> pick(n);
    for (std::size_t rest = static_cast<std::size_t>(s), k = 0;
         k < static_cast<std::size_t>(n); ++k) {
      pick[k] = rest % members;
      rest /= members;
    }
    double tail = 0.0, moment = 0.0;
    for (std::size_t o = 0; o < outcomes; ++o) {
      double p = 1.0, d = 0.0;
      std::size_t rest = o;
      for (int k = 0; k < n; ++k) {
        const std::size_t a = rest % atoms;
        rest /= atoms;
        p *= urn.credal[pick[k]][a];
        d += deviation[k][a];
      }
      if (d > threshold) tail += p;
      moment += p * std::exp(lambda * d);
    }
    lhs = std::max(lhs, tail);
    mgf = std::max(mgf, moment);
  }
  const double rhs = mgf / std::exp(mult * eps * log_n);
  return MarkovGap{lhs, rhs, lhs <= rhs + 1e-9};
}

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kUniformRandom:
      return "uniform-random";
    case Strategy::kExtremeHigh:
      return "extreme-high";
    case Strategy::kExtremeLow:
      return "extreme-low";
    case Strategy::kOscillating:
      return "oscillating";
  }
  return "unknown";
}

Strategy ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kUniformRandom, Strategy::kExtremeHigh,
                     Strategy::kExtremeLow, Strategy::kOscillating}) {
    if (StrategyName(s) == name) return s;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown strategy '" + std::string(name) + "'");
}

void Scenario::Validate() const {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kInvalidArgument,
                "scenario '" + name + "': " + what);
  };
  if (!(mean_lo <= mean_hi)) fail("mean_lo must not exceed mean_hi");
  if (!(sigma_lo >= 0.0 && sigma_lo <= sigma_hi)) {
    fail("need 0 <= sigma_lo <= sigma_hi");
  }
  if (n_list.empty()) fail("n_list is empty");
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (n_list[k] < 1) fail("sample sizes must be >= 1");
    if (k && n_list[k] <= n_list[k - 1]) fail("n_list must be ascending");
  }
  if (reps < 1) fail("reps must be >= 1");
  if (!(epsilon >= 0.0)) fail("epsilon must be >= 0");
}

double InverseNormalCdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "normal quantile needs p in (0, 1)");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - kLow) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

SimulationReport McSimulate(const Scenario& s) {
  SimulationReport report = EmptyReport(s);
  const long items = static_cast<long>(report.samples.size());
#pragma omp parallel for schedule(dynamic, 16) \
    num_threads(kernels::ThreadCount()) if (items > 1)
  for (long t = 0; t < items; ++t) {
    const std::size_t idx = static_cast<std::size_t>(t);
    report.samples[idx] = RunRepetition(s, idx / s.reps, idx % s.reps,
                                        report.band_lo, report.band_hi);
  }
  return report;
}

std::vector<CurvePoint> FrequencyCurve(const SimulationReport& report) {
  const Scenario& s = report.scenario;
  std::vector<CurvePoint> curve;
  for (std::size_t i = 0; i < s.n_list.size(); ++i) {
    std::size_t inside = 0;
    for (std::size_t r = 0; r < s.reps; ++r) {
      inside += report.samples[i * s.reps + r].in_band;
    }
    curve.push_back(CurvePoint{
        s.n_list[i],
        static_cast<double>(inside) / static_cast<double>(s.reps), inside});
  }
  return curve;
}

namespace serial {

double ExactLowerProbInterval(const Urn& urn, int n, double lo, double hi) {
  const ExactSetup setup = PrepareExact(urn, n);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& counts : setup.multisets) {
    best = std::min(best, MultisetProbability(urn, setup, counts, n, lo, hi));
  }
  return best;
}

SimulationReport McSimulate(const Scenario& s) {
  SimulationReport report = EmptyReport(s);
  for (std::size_t i = 0; i < s.n_list.size(); ++i) {
    for (std::size_t r = 0; r < s.reps; ++r) {
      report.samples[i * s.reps + r] =
          RunRepetition(s, i, r, report.band_lo, report.band_hi);
    }
  }
  return report;
}

}  // namespace serial
}  // namespace caplab::wlln
