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

#ifndef CAPLAB_FORMAT_H_
#define CAPLAB_FORMAT_H_

#include <charconv>
#include <cstddef>
#include <span>
#include <string>
#include <system_error>

namespace caplab {

// Shortest decimal string that parses back to exactly `x`.
inline std::string FormatNumber(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

// "{v1,v2,...}" for the values of `range` selected by the bits of `mask`.
inline std::string FormatValueSet(std::span<const double> range,
                                  unsigned long long mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t k = 0; k < range.size(); ++k) {
    if (!(mask >> k & 1ULL)) continue;
    if (!first) out += ',';
    out += FormatNumber(range[k]);
    first = false;
  }
  return out + "}";
}

}  // namespace caplab

#endif  // CAPLAB_FORMAT_H_
