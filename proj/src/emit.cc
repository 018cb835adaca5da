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

#include "caplab/emit.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "caplab/error.h"
#include "caplab/format.h"

namespace caplab::emit {
namespace {

std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Fixed two-decimal coordinates keep the document byte-stable.
std::string Coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string ToCsv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) out += ',';
      out += CsvField(fields[k]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string Bool(bool b) { return b ? "true" : "false"; }

std::string ToSvg(const Chart& chart) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 60, kRight = 160, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_min = 0.0, x_max = 1.0;
  bool any = false;
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      x_min = any ? std::min(x_min, x) : x;
      x_max = any ? std::max(x_max, x) : x;
      any = true;
    }
  }
  if (x_max == x_min) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double y) {
    return kTop + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << Coord(kLeft + plot_w / 2) << "\" y=\"20\" "
      << "text-anchor=\"middle\" font-size=\"14\">" << Xml(chart.title)
      << "</text>\n";
  // Axes, y ticks at 0, 0.25, ..., 1 and x ticks at the ends.
  svg << "<line x1=\"" << Coord(kLeft) << "\" y1=\"" << Coord(py(0))
      << "\" x2=\"" << Coord(kLeft + plot_w) << "\" y2=\"" << Coord(py(0))
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << Coord(kLeft) << "\" y1=\"" << Coord(py(0))
      << "\" x2=\"" << Coord(kLeft) << "\" y2=\"" << Coord(py(1))
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = t / 4.0;
    svg << "<line x1=\"" << Coord(kLeft - 4) << "\" y1=\"" << Coord(py(y))
        << "\" x2=\"" << Coord(kLeft + plot_w) << "\" y2=\"" << Coord(py(y))
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << Coord(kLeft - 8) << "\" y=\"" << Coord(py(y) + 4)
        << "\" text-anchor=\"end\">" << FormatNumber(y) << "</text>\n";
  }
  for (double x : {x_min, x_max}) {
    svg << "<text x=\"" << Coord(px(x)) << "\" y=\""
        << Coord(py(0) + 18) << "\" text-anchor=\"middle\">"
        << FormatNumber(x) << "</text>\n";
  }
  svg << "<text x=\"" << Coord(kLeft + plot_w / 2) << "\" y=\""
      << Coord(kHeight - 10) << "\" text-anchor=\"middle\">"
      << Xml(chart.x_label) << "</text>\n"
      << "<text x=\"15\" y=\"" << Coord(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << Coord(kTop + plot_h / 2) << ")\">" << Xml(chart.y_label)
      << "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i) svg << ' ';
        svg << Coord(px(s.points[i].first)) << ','
            << Coord(py(s.points[i].second));
      }
      svg << "\"/>\n";
    }
    for (const auto& [x, y] : s.points) {
      svg << "<circle cx=\"" << Coord(px(x)) << "\" cy=\"" << Coord(py(y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    svg << "<line x1=\"" << Coord(kLeft + plot_w + 15) << "\" y1=\""
        << Coord(ly) << "\" x2=\"" << Coord(kLeft + plot_w + 35)
        << "\" y2=\"" << Coord(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << Coord(kLeft + plot_w + 40) << "\" y=\""
        << Coord(ly + 4) << "\">" << Xml(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) {
      throw Error(ErrorKind::kIoError, "cannot create directory for '" +
                                           path + "': " + ec.message());
    }
  }
  const fs::path temp = fs::path(path + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorKind::kIoError, "cannot open '" + temp.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
      throw Error(ErrorKind::kIoError, "write to '" + temp.string() +
                                           "' failed");
    }
  }
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw Error(ErrorKind::kIoError, "cannot move output into '" + path + "'");
  }
}

}  // namespace caplab::emit
