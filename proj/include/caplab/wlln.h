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

#ifndef CAPLAB_WLLN_H_
#define CAPLAB_WLLN_H_

// Weak law of large numbers under ambiguity: truncation and centering,
// exact lower probabilities for repeated draws from one urn, the exponential
// Markov bound, and a Monte Carlo harness for normal draws with ambiguous
// mean and deviation.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "caplab/measure.h"
#include "caplab/urn_model.h"

namespace caplab::wlln {

// n / log(1 + n), natural log. Errors: kInvalidArgument for n < 1.
double TruncationBound(int n);
// x clamped to [-TruncationBound(n), TruncationBound(n)].
double Truncate(double x, int n);

// f_n(X - mu_bar) - E[f_n(X - mu_bar)] + mu_bar, where E is the upper
// envelope over `credal` and mu_bar must equal E[X] within tolerance.
// Errors: kMeanMismatch.
RandomVariable CenterTruncated(const CredalSet& credal, const RandomVariable& x,
                               int n, double mu_bar,
                               double tolerance = Tolerance{}.derived);

// Largest (members multisets) x (sum states) product accepted by the exact
// enumeration.
inline constexpr double kMaxExactWork = 1e7;

// min over (Q_1, ..., Q_n) in credal^n of P(lo <= S_n / n <= hi) for n
// independent draws of urn.x. The event is symmetric in the draws, so only
// multisets of selections are visited. Errors: kEnumerationCap.
double ExactLowerProbInterval(const Urn& urn, int n, double lo, double hi);
// The band [lower mean - eps, upper mean + eps].
double ExactLowerProb(const Urn& urn, int n, double eps);

struct MarkovGap {
  double lhs;
  double rhs;
  bool ok;
};

// lhs = max over selections of P(sum_k (Xbar_k - mu_bar) > n eps), with
// Xbar_k the centered truncation at index k; rhs = max over selections of
// E[exp(lambda sum_k (Xbar_k - mu_bar))] / exp(mult eps log(1 + n)),
// lambda = mult log(1 + n) / n. Errors: kEnumerationCap.
MarkovGap ExpMarkovGap(const Urn& urn, int n, double eps, double mult);

enum class Strategy { kUniformRandom, kExtremeHigh, kExtremeLow, kOscillating };

// "uniform-random", "extreme-high", "extreme-low", "oscillating".
std::string_view StrategyName(Strategy s);
// Errors: kInvalidArgument for an unknown name.
Strategy ParseStrategy(std::string_view name);

struct Scenario {
  std::string name = "scenario";
  double mean_lo = 0.0;
  double mean_hi = 0.0;
  double sigma_lo = 1.0;
  double sigma_hi = 1.0;
  std::vector<int> n_list;
  std::size_t reps = 100;
  double epsilon = 0.0;
  Strategy strategy = Strategy::kUniformRandom;
  std::uint64_t seed = 1;

  // Errors: kInvalidArgument naming the first bad field.
  void Validate() const;
  bool operator==(const Scenario&) const = default;
};

struct Sample {
  int n;
  std::size_t rep;
  double sample_mean;
  bool in_band;
};

struct CurvePoint {
  int n;
  double frequency;
  std::size_t in_band;
};

struct SimulationReport {
  Scenario scenario;
  // Ordered by (n as listed, rep).
  std::vector<Sample> samples;
  double band_lo = 0.0;
  double band_hi = 0.0;
};

// Acklam's rational approximation of the standard normal quantile,
// relative error below 1.2e-9, no refinement step.
double InverseNormalCdf(double p);

// One stream per (seed, n, rep); the i-th draw of a repetition is
// mu_i + sigma_i z_i with (mu_i, sigma_i) picked by the strategy.
SimulationReport McSimulate(const Scenario& s);

// One row per n in scenario order.
std::vector<CurvePoint> FrequencyCurve(const SimulationReport& report);

namespace serial {

double ExactLowerProbInterval(const Urn& urn, int n, double lo, double hi);
SimulationReport McSimulate(const Scenario& s);

}  // namespace serial
}  // namespace caplab::wlln

#endif  // CAPLAB_WLLN_H_
