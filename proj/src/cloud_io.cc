// Copyright 2026 The obbscene Authors
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

#include "obbscene/cloud_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "obbscene/error.h"

namespace obbscene {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Tokens(std::string_view line, bool commas) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  const auto is_sep = [commas](char c) {
    return c == ' ' || c == '\t' || c == '\r' || (commas && c == ',');
  };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void Fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line_no) + ": " + what);
}

double ParseNumber(std::string_view token, std::size_t line_no) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Fail(line_no, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

void AddPoint(PointCloud& cloud, double x, double y, double z,
              std::size_t line_no) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    Fail(line_no, "non-finite coordinate");
  }
  cloud.push_back({x, y, z});
}

// Splits text into lines, tracking 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}
  bool Next(std::string_view& line) {
    if (pos_ > text_.size() || (pos_ == text_.size() && line_no_ > 0)) {
      return false;
    }
    const auto end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    pos_ = stop + 1;
    ++line_no_;
    return true;
  }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

PointCloud ParseDelimited(std::string_view text, bool commas) {
  PointCloud cloud;
  LineReader reader(text);
  std::string_view raw;
  while (reader.Next(raw)) {
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = Tokens(line, commas);
    if (tok.size() < 3) Fail(reader.line_no(), "expected x y z");
    AddPoint(cloud, ParseNumber(tok[0], reader.line_no()),
             ParseNumber(tok[1], reader.line_no()),
             ParseNumber(tok[2], reader.line_no()), reader.line_no());
  }
  return cloud;
}

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<std::string> properties;
};

std::size_t ParseCount(std::string_view token, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Fail(line_no, "bad element count");
  }
  return value;
}

PointCloud ParsePly(std::string_view text) {
  LineReader reader(text);
  std::string_view raw;
  if (!reader.Next(raw) || Trim(raw) != "ply") Fail(1, "missing 'ply' magic");

  std::vector<PlyElement> elements;
  bool ascii = false;
  bool header_done = false;
  while (reader.Next(raw)) {
    const auto tok = Tokens(Trim(raw), false);
    if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() < 2) Fail(reader.line_no(), "bad format line");
      if (tok[1] == "binary_little_endian" || tok[1] == "binary_big_endian") {
        throw Error(ErrorCode::kUnsupportedFormat,
                    "binary PLY is not supported");
      }
      if (tok[1] != "ascii") Fail(reader.line_no(), "unknown PLY format");
      ascii = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) Fail(reader.line_no(), "bad element line");
      elements.push_back(
          {std::string(tok[1]), ParseCount(tok[2], reader.line_no()), {}});
    } else if (tok[0] == "property") {
      if (elements.empty() || tok.size() < 3) {
        Fail(reader.line_no(), "bad property line");
      }
      elements.back().properties.emplace_back(tok.back());
    } else if (tok[0] == "end_header") {
      header_done = true;
      break;
    } else {
      Fail(reader.line_no(), "unknown header keyword");
    }
  }
  if (!header_done) Fail(reader.line_no(), "missing end_header");
  if (!ascii) Fail(reader.line_no(), "missing format line");

  PointCloud cloud;
  bool saw_vertex = false;
  for (const PlyElement& element : elements) {
    int ix = -1, iy = -1, iz = -1;
    const bool is_vertex = element.name == "vertex";
    if (is_vertex) {
      saw_vertex = true;
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        if (element.properties[p] == "x") ix = static_cast<int>(p);
        if (element.properties[p] == "y") iy = static_cast<int>(p);
        if (element.properties[p] == "z") iz = static_cast<int>(p);
      }
      if (ix < 0 || iy < 0 || iz < 0) {
        Fail(reader.line_no(), "vertex element lacks x, y or z");
      }
      cloud.reserve(element.count);
    }
    for (std::size_t r = 0; r < element.count;) {
      if (!reader.Next(raw)) Fail(reader.line_no(), "truncated element data");
      const std::string_view line = Trim(raw);
      if (line.empty()) continue;
      ++r;
      if (!is_vertex) continue;
      const auto tok = Tokens(line, false);
      if (tok.size() < element.properties.size()) {
        Fail(reader.line_no(), "too few vertex properties");
      }
      AddPoint(cloud, ParseNumber(tok[ix], reader.line_no()),
               ParseNumber(tok[iy], reader.line_no()),
               ParseNumber(tok[iz], reader.line_no()), reader.line_no());
    }
  }
  if (!saw_vertex) Fail(reader.line_no(), "no vertex element");
  return cloud;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*g",
                std::numeric_limits<double>::max_digits10, v);
  return buf;
}

}  // namespace

CloudFormat ParseCloudFormat(std::string_view name) {
  if (name == "xyz") return CloudFormat::kXyz;
  if (name == "csv") return CloudFormat::kCsv;
  if (name == "ply" || name == "ply-ascii") return CloudFormat::kPlyAscii;
  throw Error(ErrorCode::kUnsupportedFormat,
              "unknown cloud format '" + std::string(name) + "'");
}

std::string_view CloudFormatName(CloudFormat format) {
  switch (format) {
    case CloudFormat::kXyz:
      return "xyz";
    case CloudFormat::kCsv:
      return "csv";
    case CloudFormat::kPlyAscii:
      return "ply-ascii";
  }
  return "?";
}

CloudFormat FormatFromPath(const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "xyz" || ext == "txt") return CloudFormat::kXyz;
  if (ext == "csv") return CloudFormat::kCsv;
  if (ext == "ply") return CloudFormat::kPlyAscii;
  throw Error(ErrorCode::kUnsupportedFormat,
              "cannot infer cloud format from '" + path + "'");
}

PointCloud ParseCloud(std::string_view text, CloudFormat format) {
  switch (format) {
    case CloudFormat::kXyz:
      return ParseDelimited(text, /*commas=*/true);
    case CloudFormat::kCsv:
      return ParseDelimited(text, /*commas=*/true);
    case CloudFormat::kPlyAscii:
      return ParsePly(text);
  }
  throw Error(ErrorCode::kUnsupportedFormat, "unknown cloud format");
}

PointCloud load_cloud(const std::string& path, CloudFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseCloud(buffer.str(), format);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

std::string FormatCloud(const PointCloud& cloud, CloudFormat format) {
  std::string out;
  const char* sep = format == CloudFormat::kCsv ? "," : " ";
  if (format == CloudFormat::kPlyAscii) {
    out += "ply\nformat ascii 1.0\nelement vertex " +
           std::to_string(cloud.size()) +
           "\nproperty double x\nproperty double y\nproperty double z\n"
           "end_header\n";
  }
  for (const Point3& p : cloud.points()) {
    out += FormatDouble(p.x) + sep + FormatDouble(p.y) + sep +
           FormatDouble(p.z) + "\n";
  }
  return out;
}

void save_cloud(const std::string& path, const PointCloud& cloud,
                CloudFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << FormatCloud(cloud, format);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

}  // namespace obbscene
