/* Copyright 2026 The Floorgrid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef FLOORGRID_IO_CSV_HPP_
#define FLOORGRID_IO_CSV_HPP_

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "floorgrid/encoding.hpp"
#include "floorgrid/error.hpp"

namespace floorgrid::io {

/// Header "f0,f1,..." then one row per region, shortest round-trip digits.
inline std::string features_csv(const RegionFeatures& r) {
  std::ostringstream os;
  for (std::size_t c = 0; c < r.cols(); ++c) os << (c ? ",f" : "f") << c;
  os << '\n';
  char buf[32];
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t c = 0; c < r.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", r(i, c));
      os << (c ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

inline RegionFeatures parse_features_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::kFormat, "features CSV: empty");
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kFormat,
                    "features CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kFormat, "features CSV line " + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  RegionFeatures out(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c) out(i, c) = rows[i][c];
  }
  return out;
}

}  // namespace floorgrid::io

#endif  // FLOORGRID_IO_CSV_HPP_
