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

#ifndef FLOORGRID_RASTER_HPP_
#define FLOORGRID_RASTER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "floorgrid/error.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/geometry.hpp"
#include "floorgrid/grid.hpp"

namespace floorgrid {

/// Cell codes of a rasterized plan. 0..3 follow the wall-mask convention;
/// door and window codes extend it.
enum MaskCode : uint8_t {
  kExterior = 0,
  kInterior = 1,
  kExteriorWall = 2,
  kFrontDoor = 3,
  kDoor = 4,
  kWindow = 5,
};

inline constexpr uint8_t kMaxMaskCode = kWindow;

inline uint8_t mask_code(OpeningKind kind) {
  switch (kind) {
    case OpeningKind::kFrontDoor: return kFrontDoor;
    case OpeningKind::kDoor: return kDoor;
    case OpeningKind::kWindow: return kWindow;
  }
  return kDoor;
}

struct RasterMask {
  Grid<uint8_t> cells;
  /// Plan-to-grid mapping used to produce `cells`.
  RasterTransform transform;

  int width() const { return cells.width(); }
  int height() const { return cells.height(); }
  bool interior(int x, int y) const { return cells(x, y) == kInterior; }
  bool interior(std::size_t i) const { return cells[i] == kInterior; }

  std::size_t interior_count() const {
    return static_cast<std::size_t>(
        std::count(cells.cells().begin(), cells.cells().end(), kInterior));
  }

  friend bool operator==(const RasterMask&, const RasterMask&) = default;
};

/// Uniform scale that fits the plan's bounding box into a square grid of
/// `resolution` pixels with `margin` pixels on every side, centered.
inline RasterTransform fit_transform(const Floorplan& plan, int resolution,
                                     int margin = 0) {
  if (plan.vertices.size() < 3) {
    throw Error(ErrorCode::kDegeneratePolygon, "fewer than 3 vertices");
  }
  if (resolution < 1 || margin < 0 || 2 * margin >= resolution) {
    throw Error(ErrorCode::kInvalidArgument, "bad resolution or margin");
  }
  const Bounds b = bounds(plan.vertices);
  const double extent = std::max(b.width(), b.height());
  if (!(extent > 0.0)) {
    throw Error(ErrorCode::kDegeneratePolygon, "zero-extent outline");
  }
  const double scale = (resolution - 2.0 * margin) / extent;
  return {scale, (resolution - b.width() * scale) / 2.0 - b.min_x * scale,
          (resolution - b.height() * scale) / 2.0 - b.min_y * scale};
}

/// Rasterizes with an explicit transform: a pixel is interior iff its center
/// is inside the transformed outline; exterior pixels 8-adjacent to the
/// interior become walls; openings are stamped onto the exterior pixels whose
/// centers lie within half a pixel of the opening segment.
inline RasterMask rasterize_with(const Floorplan& plan,
                                 const RasterTransform& tf, int width,
                                 int height) {
  RasterMask mask{Grid<uint8_t>(width, height, kExterior), tf};
  scan_polygon(tf.apply(plan.vertices), width, height,
               [&](int x, int y) { mask.cells(x, y) = kInterior; });
  if (mask.interior_count() == 0) {
    throw Error(ErrorCode::kDegeneratePolygon,
                "interior rasterizes to zero pixels");
  }
  Grid<uint8_t>& g = mask.cells;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (g(x, y) != kExterior) continue;
      bool touches = false;
      for (int dy = -1; dy <= 1 && !touches; ++dy) {
        for (int dx = -1; dx <= 1 && !touches; ++dx) {
          touches = g.in_bounds(x + dx, y + dy) &&
                    g(x + dx, y + dy) == kInterior;
        }
      }
      if (touches) g(x, y) = kExteriorWall;
    }
  }
  for (const Opening& o : plan.openings) {
    const Point a = tf.apply(o.a);
    const Point b = tf.apply(o.b);
    const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x))) - 1);
    const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(std::max(a.x, b.x))) + 1);
    const int y_lo = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y))) - 1);
    const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(std::max(a.y, b.y))) + 1);
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        if (g(x, y) == kInterior) continue;
        if (distance_to_segment({x + 0.5, y + 0.5}, a, b) <= 0.5 + 1e-9) {
          g(x, y) = mask_code(o.kind);
        }
      }
    }
  }
  return mask;
}

/// Scales and centers the plan into a `resolution`-square grid.
inline RasterMask rasterize(const Floorplan& plan, int resolution,
                            int margin = 0) {
  return rasterize_with(plan, fit_transform(plan, resolution, margin),
                        resolution, resolution);
}

/// Meters covered by one raster pixel.
inline double raster_meters_per_pixel(const Floorplan& plan,
                                      const RasterTransform& tf) {
  return plan.meters_per_pixel / tf.scale;
}

}  // namespace floorgrid

#endif  // FLOORGRID_RASTER_HPP_
