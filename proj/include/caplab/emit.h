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

#ifndef CAPLAB_EMIT_H_
#define CAPLAB_EMIT_H_

#include <string>
#include <utility>
#include <vector>

namespace caplab::emit {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 style: fields with commas, quotes or newlines are quoted. Rows
// end with '\n'.
std::string ToCsv(const Table& table);

std::string Bool(bool b);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Self-contained SVG line chart, y fixed to [0, 1]. Every point gets a
// marker, so a one-point series is still visible.
std::string ToSvg(const Chart& chart);

// Writes to a temporary sibling and renames it over `path`. Creates the
// parent directory. Errors: kIoError.
void WriteFileAtomic(const std::string& path, const std::string& content);

}  // namespace caplab::emit

#endif  // CAPLAB_EMIT_H_
