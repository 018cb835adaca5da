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

#ifndef CAPLAB_SPACE_H_
#define CAPLAB_SPACE_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace caplab {

// Bit k set <=> atom k of the owning FiniteSpace is in the subset.
using SubsetMask = std::uint32_t;

// Dense 2^n tables are allowed up to this many atoms.
inline constexpr std::size_t kMaxTableAtoms = 20;
// Pairwise and Moebius sweeps are allowed up to this many atoms.
inline constexpr std::size_t kMaxExhaustiveAtoms = 12;

// An ordered, nonempty list of uniquely labelled atoms. The order is fixed
// at construction; masks and probability indices refer to it.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> atoms);

  // Atoms labelled "<prefix>0", "<prefix>1", ...
  static FiniteSpace Indexed(std::size_t n, std::string_view prefix = "w");

  std::size_t size() const { return atoms_.size(); }
  const std::string& label(std::size_t k) const { return atoms_[k]; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::optional<std::size_t> IndexOf(std::string_view label) const;

  // All-ones mask. Throws kTooLarge beyond kMaxTableAtoms.
  SubsetMask full_mask() const;
  std::size_t num_subsets() const;

  bool operator==(const FiniteSpace& other) const = default;

 private:
  std::vector<std::string> atoms_;
};

inline int MaskSize(SubsetMask mask) { return std::popcount(mask); }

inline bool IsSubset(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }

// Throws kTooLarge when `space` exceeds `cap` atoms; `what` names the caller.
void RequireAtMost(const FiniteSpace& space, std::size_t cap,
                   std::string_view what);

}  // namespace caplab

#endif  // CAPLAB_SPACE_H_
