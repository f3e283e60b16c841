/*
 * Copyright 2025 the prnn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal comma-separated reading helpers. The formats handled here never
// quote fields, so a plain split is enough; writers live with each module.

#ifndef PRNN_CSV_HPP_
#define PRNN_CSV_HPP_

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "prnn/errors.hpp"

namespace prnn::csv {

struct Row {
  int line = 0;  // 1-based line in the source file
  std::vector<std::string> fields;
};

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim surrounding whitespace
    size_t a = field.find_first_not_of(" \t\r");
    size_t b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? std::string() : field.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Every nonblank line of the file, split on commas. Blank lines are
// skipped but line numbers stay true to the file.
inline std::vector<Row> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<Row> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(Row{lineno, split_line(line)});
  }
  return rows;
}

inline double parse_double(const Row& row, size_t idx, const char* column,
                           const std::string& path) {
  if (idx >= row.fields.size())
    throw ParseError(path + ":" + std::to_string(row.line) + ": missing column " + column);
  const std::string& s = row.fields[idx];
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParseError(path + ":" + std::to_string(row.line) + ": column " + column +
                     " is not a number: \"" + s + "\"");
  return v;
}

}  // namespace prnn::csv

#endif  // PRNN_CSV_HPP_
