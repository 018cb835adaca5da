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

#include "caplab/space.h"

#include <unordered_set>

#include "caplab/error.h"

namespace caplab {

FiniteSpace::FiniteSpace(std::vector<std::string> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "finite space needs >= 1 atom");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& a : atoms_) {
    if (!seen.insert(a).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate atom label '" + a + "'");
    }
  }
}

FiniteSpace FiniteSpace::Indexed(std::size_t n, std::string_view prefix) {
  std::vector<std::string> atoms;
  atoms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    atoms.push_back(std::string(prefix) + std::to_string(k));
  }
  return FiniteSpace(std::move(atoms));
}

std::optional<std::size_t> FiniteSpace::IndexOf(std::string_view label) const {
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k] == label) return k;
  }
  return std::nullopt;
}

SubsetMask FiniteSpace::full_mask() const {
  RequireAtMost(*this, kMaxTableAtoms, "subset mask");
  return static_cast<SubsetMask>((std::uint64_t{1} << size()) - 1);
}

std::size_t FiniteSpace::num_subsets() const {
  RequireAtMost(*this, kMaxTableAtoms, "subset table");
  return std::size_t{1} << size();
}

void RequireAtMost(const FiniteSpace& space, std::size_t cap,
                   std::string_view what) {
  if (space.size() > cap) {
    throw Error(ErrorKind::kTooLarge,
                std::string(what) + ": " + std::to_string(space.size()) +
                    " atoms exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace caplab
