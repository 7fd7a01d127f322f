// src/base/text.cc

// Copyright 2026  uncse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "base/text.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace uncse {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view text) {
  text = Trim(text);
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const char *end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end || text.empty())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return value;
}

long ParseLong(std::string_view text) {
  text = Trim(text);
  long value = 0;
  const char *end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end || text.empty())
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  return value;
}

uint64_t ParseUint64(std::string_view text) {
  text = Trim(text);
  uint64_t value = 0;
  const char *end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end || text.empty())
    throw ConfigError("not an unsigned integer: '" + std::string(text) + "'");
  return value;
}

std::string_view Trim(std::string_view text) {
  const char *ws = " \t\r\n";
  const size_t begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const size_t end = text.find_last_not_of(ws);
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> SplitString(std::string_view text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    out.emplace_back(Trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::string> out;
  std::string token;
  while (is >> token) out.push_back(token);
  return out;
}

void WriteGridCsv(const std::string &path, const RealGrid &grid) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  std::string line;
  for (Eigen::Index r = 0; r < grid.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < grid.cols(); ++c) {
      if (c > 0) line += ',';
      line += FormatDouble(grid(r, c));
    }
    line += '\n';
    os << line;
  }
  if (!os) throw ConfigError("write failed: " + path);
}

RealGrid ReadGridCsv(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  std::vector<double> values;
  Eigen::Index rows = 0, cols = -1;
  std::string line;
  while (std::getline(is, line)) {
    if (Trim(line).empty()) continue;
    Eigen::Index count = 0;
    size_t start = 0;
    while (true) {
      const size_t pos = line.find(',', start);
      values.push_back(ParseDouble(
          std::string_view(line).substr(start, pos - start)));
      ++count;
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (cols >= 0 && count != cols)
      throw ConfigError(path + ": ragged grid at row " + std::to_string(rows));
    cols = count;
    ++rows;
  }
  if (rows == 0) throw ConfigError(path + ": empty grid");
  RealGrid grid(rows, cols);
  std::copy(values.begin(), values.end(), grid.data());
  return grid;
}

}  // namespace uncse
