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

#ifndef FLOORGRID_DENSITY_HPP_
#define FLOORGRID_DENSITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include "floorgrid/error.hpp"
#include "floorgrid/grid.hpp"
#include "floorgrid/raster.hpp"

namespace floorgrid {

/// Per-pixel length of the maximal interior run through the pixel along each
/// axis; zero off the interior.
struct RunLengths {
  Grid<uint32_t> x;
  Grid<uint32_t> y;
};

/// `values` holds 1 / raw_sums on the interior and exactly 0 elsewhere.
/// `raw_sums` keeps the integral four-direction distance sums.
struct DensityMap {
  Grid<double> values;
  Grid<uint32_t> raw_sums;

  int width() const { return raw_sums.width(); }
  int height() const { return raw_sums.height(); }
  bool interior(std::size_t i) const { return raw_sums[i] != 0; }

  friend bool operator==(const DensityMap&, const DensityMap&) = default;
};

/// Per-axis maps; here `values` equals `raw_sums` (no inversion).
struct AxisDensityMaps {
  DensityMap x;
  DensityMap y;
};

struct NormalizedDensityMap {
  Grid<double> values;
};

namespace detail {

inline void require_interior(const RasterMask& mask) {
  if (mask.interior_count() == 0) {
    throw Error(ErrorCode::kEmptyInterior, "mask has no interior pixel");
  }
}

}  // namespace detail

/// Linear sweeps. Rows: each horizontal run is filled with its length once
/// its end is found. Columns: a forward pass counts the run so far, a
/// backward pass copies each run's final count over the whole run.
inline RunLengths directional_run_lengths(const RasterMask& mask) {
  detail::require_interior(mask);
  const int w = mask.width();
  const int h = mask.height();
  RunLengths runs{Grid<uint32_t>(w, h, 0), Grid<uint32_t>(w, h, 0)};
  const uint8_t* cells = mask.cells.cells().data();
  uint32_t* lx = runs.x.cells().data();
  uint32_t* ly = runs.y.cells().data();
  const std::size_t stride = static_cast<std::size_t>(w);

  for (int y = 0; y < h; ++y) {
    const uint8_t* m = cells + y * stride;
    uint32_t* out = lx + y * stride;
    int x = 0;
    while (x < w) {
      if (m[x] != kInterior) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < w && m[x] == kInterior) ++x;
      std::fill(out + start, out + x, static_cast<uint32_t>(x - start));
    }
  }

  for (int x = 0; x < w; ++x) ly[x] = cells[x] == kInterior ? 1u : 0u;
  for (int y = 1; y < h; ++y) {
    const uint8_t* m = cells + y * stride;
    const uint32_t* below = ly + (y - 1) * stride;
    uint32_t* out = ly + y * stride;
    for (int x = 0; x < w; ++x) out[x] = m[x] == kInterior ? below[x] + 1 : 0u;
  }
  for (int y = h - 2; y >= 0; --y) {
    const uint32_t* above = ly + (y + 1) * stride;
    uint32_t* out = ly + y * stride;
    for (int x = 0; x < w; ++x) out[x] = (out[x] != 0 && above[x] != 0) ? above[x] : out[x];
  }
  return runs;
}

inline DensityMap density_map(const RasterMask& mask) {
  RunLengths runs = directional_run_lengths(mask);
  const int w = mask.width();
  const int h = mask.height();
  DensityMap d{Grid<double>(w, h, 0.0), std::move(runs.x)};
  uint32_t* sums = d.raw_sums.cells().data();
  const uint32_t* ly = runs.y.cells().data();
  double* values = d.values.cells().data();
  const std::size_t n = d.raw_sums.size();
  for (std::size_t i = 0; i < n; ++i) {
    sums[i] += ly[i];
    if (sums[i] != 0) values[i] = 1.0 / static_cast<double>(sums[i]);
  }
  return d;
}

inline AxisDensityMaps axis_density_maps(const RasterMask& mask) {
  RunLengths runs = directional_run_lengths(mask);
  auto as_map = [](Grid<uint32_t> raw) {
    Grid<double> values(raw.width(), raw.height(), 0.0);
    for (std::size_t i = 0; i < raw.size(); ++i) values[i] = raw[i];
    return DensityMap{std::move(values), std::move(raw)};
  };
  return {as_map(std::move(runs.x)), as_map(std::move(runs.y))};
}

/// 3x3 Sobel gradient magnitude of the raw sums (the inverse density), with
/// zero padding, clamped to 255 and scaled to [0, 1]. Zero off the interior.
inline NormalizedDensityMap normalize_density(const DensityMap& d) {
  const int w = d.width();
  const int h = d.height();
  NormalizedDensityMap out{Grid<double>(w, h, 0.0)};
  auto at = [&](int x, int y) -> double {
    return d.raw_sums.in_bounds(x, y) ? d.raw_sums(x, y) : 0.0;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (d.raw_sums(x, y) == 0) continue;
      const double gx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
      const double gy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
      out.values(x, y) = std::min(std::hypot(gx, gy), 255.0) / 255.0;
    }
  }
  return out;
}

}  // namespace floorgrid

#endif  // FLOORGRID_DENSITY_HPP_
