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

#ifndef CAPLAB_ERROR_H_
#define CAPLAB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace caplab {

enum class ErrorKind {
  kInvalidArgument,
  kNotGrounded,
  kNotMonotone,
  kTooLarge,
  kNotTwoAlternating,
  kAxisMismatch,
  kNegativeInput,
  kNonPositiveFunction,
  kEnumerationCap,
  kMeanMismatch,
  kParseError,
  kSchemaError,
  kReferenceError,
  kInvariantError,
  kIoError,
};

// Stable CamelCase name used in machine-readable error records.
std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Absolute tolerances. `direct` guards plain arithmetic identities,
// `derived` guards quantities that went through optimization or chains of
// sums.
struct Tolerance {
  double direct = 1e-12;
  double derived = 1e-9;
};

// |a - b| scaled by max(1, |a|, |b|).
double RelativeGap(double a, double b);

}  // namespace caplab

#endif  // CAPLAB_ERROR_H_
