// src/base/text.h

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

#ifndef UNCSE_BASE_TEXT_H_
#define UNCSE_BASE_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "base/common.h"

namespace uncse {

/// Shortest representation that parses back to the identical double.
std::string FormatDouble(double value);

/// Strict parsers: the whole string must be consumed. Throw ConfigError.
double ParseDouble(std::string_view text);
long ParseLong(std::string_view text);
uint64_t ParseUint64(std::string_view text);

std::string_view Trim(std::string_view text);
std::vector<std::string> SplitString(std::string_view text, char sep);
std::vector<std::string> SplitWhitespace(std::string_view text);

/// Comma-separated grid, one row per line. Values round-trip exactly.
void WriteGridCsv(const std::string &path, const RealGrid &grid);
RealGrid ReadGridCsv(const std::string &path);

}  // namespace uncse

#endif  // UNCSE_BASE_TEXT_H_
