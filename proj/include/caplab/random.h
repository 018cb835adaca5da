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

#ifndef CAPLAB_RANDOM_H_
#define CAPLAB_RANDOM_H_

#include <cstdint>
#include <random>

namespace caplab {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of the stream identified by (seed, a, b).
constexpr std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0) {
  return Mix64(Mix64(Mix64(seed) ^ a) ^ b);
}

// mt19937_64 with distribution code written out here, so draws do not depend
// on the standard library's distribution implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : gen_(seed) {}

  // 53-bit uniform on [0, 1).
  double Uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1): midpoint of the 53-bit cell.
  double OpenUniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n) by rejection.
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace caplab

#endif  // CAPLAB_RANDOM_H_
