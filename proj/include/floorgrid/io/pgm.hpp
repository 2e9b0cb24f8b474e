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

#ifndef FLOORGRID_IO_PGM_HPP_
#define FLOORGRID_IO_PGM_HPP_

#include <algorithm>
#include <cstdint>
#include <ostream>

#include "floorgrid/grid.hpp"

namespace floorgrid::io {

/// Export only. PGM rows run top to bottom, so the grid is flipped
/// vertically. Codes are written as gray levels unchanged.
inline void write_pgm(std::ostream& os, const Grid<uint8_t>& g, bool binary = true) {
  os << (binary ? "P5" : "P2") << '\n' << g.width() << ' ' << g.height() << "\n255\n";
  for (int y = g.height() - 1; y >= 0; --y) {
    for (int x = 0; x < g.width(); ++x) {
      if (binary) {
        os.put(static_cast<char>(g(x, y)));
      } else {
        os << int(g(x, y)) << (x + 1 < g.width() ? ' ' : '\n');
      }
    }
  }
}

/// Min-max scaled preview of a real grid; lossy.
inline void write_pgm_scaled(std::ostream& os, const Grid<double>& g) {
  double lo = 0.0, hi = 0.0;
  if (g.size() > 0) {
    const auto [mn, mx] = std::minmax_element(g.cells().begin(), g.cells().end());
    lo = *mn;
    hi = *mx;
  }
  Grid<uint8_t> out(g.width(), g.height(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = hi > lo ? static_cast<uint8_t>(255.0 * (g[i] - lo) / (hi - lo) + 0.5) : 0;
  }
  write_pgm(os, out, true);
}

}  // namespace floorgrid::io

#endif  // FLOORGRID_IO_PGM_HPP_
