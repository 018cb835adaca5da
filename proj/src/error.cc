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

#include "caplab/error.h"

#include <algorithm>
#include <cmath>

namespace caplab {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kNotGrounded: return "NotGrounded";
    case ErrorKind::kNotMonotone: return "NotMonotone";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kNotTwoAlternating: return "NotTwoAlternating";
    case ErrorKind::kAxisMismatch: return "AxisMismatch";
    case ErrorKind::kNegativeInput: return "NegativeInput";
    case ErrorKind::kNonPositiveFunction: return "NonPositiveFunction";
    case ErrorKind::kEnumerationCap: return "EnumerationCap";
    case ErrorKind::kMeanMismatch: return "MeanMismatch";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kSchemaError: return "SchemaError";
    case ErrorKind::kReferenceError: return "ReferenceError";
    case ErrorKind::kInvariantError: return "InvariantError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

double RelativeGap(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) / scale;
}

}  // namespace caplab
