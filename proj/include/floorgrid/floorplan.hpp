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

#ifndef FLOORGRID_FLOORPLAN_HPP_
#define FLOORGRID_FLOORPLAN_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "floorgrid/error.hpp"
#include "floorgrid/geometry.hpp"
#include "floorgrid/grid.hpp"

namespace floorgrid {

enum class OpeningKind { kDoor, kWindow, kFrontDoor };

inline std::string_view to_string(OpeningKind kind) {
  switch (kind) {
    case OpeningKind::kDoor: return "door";
    case OpeningKind::kWindow: return "window";
    case OpeningKind::kFrontDoor: return "front_door";
  }
  return "door";
}

struct Opening {
  Point a;
  Point b;
  OpeningKind kind = OpeningKind::kDoor;
  int label = 0;

  friend bool operator==(const Opening&, const Opening&) = default;
};

struct Room {
  Polygon polygon;
  int label = 0;

  friend bool operator==(const Room&, const Room&) = default;
};

enum class EdgeFlag { kAxisAligned, kSloping };

/// Vector floorplan: a simple counter-clockwise outline in pixel units,
/// openings on that outline and, optionally, ground-truth rooms tiling the
/// interior. Edge i runs from vertices[i] to vertices[i + 1].
struct Floorplan {
  Polygon vertices;
  double meters_per_pixel = 1.0;
  std::vector<Opening> openings;
  std::vector<Room> rooms;
  std::vector<EdgeFlag> edge_flags;

  std::size_t edge_count() const { return vertices.size(); }
  std::pair<Point, Point> edge(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }

  /// Explicit flag when present, otherwise derived from the edge direction.
  EdgeFlag edge_flag(std::size_t i) const {
    if (i < edge_flags.size()) return edge_flags[i];
    const auto [a, b] = edge(i);
    return is_axis_aligned(a, b) ? EdgeFlag::kAxisAligned : EdgeFlag::kSloping;
  }

  friend bool operator==(const Floorplan&, const Floorplan&) = default;
};

inline Floorplan make_rectangle(int width, int height,
                                double meters_per_pixel = 1.0) {
  Floorplan plan;
  plan.vertices = {{0, 0}, {double(width), 0}, {double(width), double(height)},
                   {0, double(height)}};
  plan.meters_per_pixel = meters_per_pixel;
  plan.edge_flags.assign(4, EdgeFlag::kAxisAligned);
  return plan;
}

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  kTooFewVertices,
  kNonFinite,
  kNotSimple,
  kNotCounterClockwise,
  kNonPositiveScale,
  kEdgeFlagCount,
  kEdgeFlagMismatch,
  kOpeningOffBoundary,
  kRoomNotSimple,
  kRoomsOverlap,
  kRoomsDoNotTile,
};

inline std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kTooFewVertices: return "TooFewVertices";
    case ViolationKind::kNonFinite: return "NonFinite";
    case ViolationKind::kNotSimple: return "NotSimple";
    case ViolationKind::kNotCounterClockwise: return "NotCounterClockwise";
    case ViolationKind::kNonPositiveScale: return "NonPositiveScale";
    case ViolationKind::kEdgeFlagCount: return "EdgeFlagCount";
    case ViolationKind::kEdgeFlagMismatch: return "EdgeFlagMismatch";
    case ViolationKind::kOpeningOffBoundary: return "OpeningOffBoundary";
    case ViolationKind::kRoomNotSimple: return "RoomNotSimple";
    case ViolationKind::kRoomsOverlap: return "RoomsOverlap";
    case ViolationKind::kRoomsDoNotTile: return "RoomsDoNotTile";
  }
  return "Unknown";
}

struct Violation {
  ViolationKind kind;
  std::string detail;
};

namespace detail {

inline bool on_boundary(const Polygon& poly, Point p, double eps = 1e-9) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (distance_to_segment(p, poly[i], poly[(i + 1) % poly.size()]) <= eps) {
      return true;
    }
  }
  return false;
}

/// A segment lies on the outline when both endpoints and its midpoint lie on
/// one common edge.
inline bool segment_on_boundary(const Polygon& poly, Point a, Point b,
                                double eps = 1e-9) {
  const Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = poly[i];
    const Point q = poly[(i + 1) % poly.size()];
    if (distance_to_segment(a, p, q) <= eps &&
        distance_to_segment(b, p, q) <= eps &&
        distance_to_segment(mid, p, q) <= eps) {
      return true;
    }
  }
  return false;
}

/// Checks that the rooms tile the interior by sampling pixel centers over the
/// outline's bounding box at unit spacing (coarsened for very large plans).
inline void check_room_tiling(const Floorplan& plan,
                              std::vector<Violation>& out) {
  const Bounds b = bounds(plan.vertices);
  const double extent = std::max(b.width(), b.height());
  const double scale = extent > 1024.0 ? 1024.0 / extent : 1.0;
  const RasterTransform tf{scale, -b.min_x * scale, -b.min_y * scale};
  const int w = static_cast<int>(std::ceil(b.width() * scale));
  const int h = static_cast<int>(std::ceil(b.height() * scale));
  Grid<uint8_t> interior(w, h, 0);
  scan_polygon(tf.apply(plan.vertices), w, h,
               [&](int x, int y) { interior(x, y) = 1; });
  Grid<uint16_t> cover(w, h, 0);
  for (const Room& room : plan.rooms) {
    scan_polygon(tf.apply(room.polygon), w, h,
                 [&](int x, int y) { ++cover(x, y); });
  }
  bool overlap = false;
  bool gap = false;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover[i] > 1) overlap = true;
    if (interior[i] ? cover[i] == 0 : cover[i] != 0) gap = true;
  }
  if (overlap) {
    out.push_back({ViolationKind::kRoomsOverlap, "rooms overlap"});
  }
  if (gap) {
    out.push_back({ViolationKind::kRoomsDoNotTile,
                   "rooms do not cover the interior exactly"});
  }
}

}  // namespace detail

/// Returns every invariant the plan breaks; an empty list means valid.
inline std::vector<Violation> validate(const Floorplan& plan) {
  std::vector<Violation> out;
  const Polygon& poly = plan.vertices;
  if (!(plan.meters_per_pixel > 0.0) || !std::isfinite(plan.meters_per_pixel)) {
    out.push_back({ViolationKind::kNonPositiveScale,
                   "meters_per_pixel must be positive"});
  }
  if (poly.size() < 3) {
    out.push_back({ViolationKind::kTooFewVertices, "fewer than 3 vertices"});
    return out;
  }
  for (const Point& p : poly) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      out.push_back({ViolationKind::kNonFinite, "non-finite vertex"});
      return out;
    }
  }
  const bool simple = is_simple(poly);
  if (!simple) {
    out.push_back({ViolationKind::kNotSimple, "outline self-intersects"});
  } else if (signed_area(poly) < 0.0) {
    out.push_back({ViolationKind::kNotCounterClockwise,
                   "outline is clockwise"});
  }
  if (!plan.edge_flags.empty() && plan.edge_flags.size() != poly.size()) {
    out.push_back({ViolationKind::kEdgeFlagCount,
                   "edge_flags length differs from vertex count"});
  } else {
    for (std::size_t i = 0; i < plan.edge_flags.size(); ++i) {
      const auto [a, b] = plan.edge(i);
      if (plan.edge_flags[i] == EdgeFlag::kAxisAligned &&
          !is_axis_aligned(a, b)) {
        out.push_back({ViolationKind::kEdgeFlagMismatch,
                       "edge " + std::to_string(i) +
                           " flagged axis_aligned but is sloping"});
      }
    }
  }
  for (std::size_t i = 0; i < plan.openings.size(); ++i) {
    const Opening& o = plan.openings[i];
    if (!detail::segment_on_boundary(poly, o.a, o.b)) {
      out.push_back({ViolationKind::kOpeningOffBoundary,
                     "opening " + std::to_string(i) + " is off the outline"});
    }
  }
  if (!plan.rooms.empty() && simple) {
    bool rooms_simple = true;
    for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
      if (!is_simple(plan.rooms[i].polygon)) {
        out.push_back({ViolationKind::kRoomNotSimple,
                       "room " + std::to_string(i) + " is not simple"});
        rooms_simple = false;
      }
    }
    if (rooms_simple) detail::check_room_tiling(plan, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Squeeze

enum class Side { kNorth, kSouth, kEast, kWest };

/// Removes the rectangle of `depth` pixels adjacent to one side of the plan's
/// bounding box, between offsets [start, end) measured along that side from
/// its west (N/S) or south (E/W) end.
struct SqueezeOp {
  Side side = Side::kNorth;
  int start = 0;
  int end = 0;
  int depth = 0;

  friend bool operator==(const SqueezeOp&, const SqueezeOp&) = default;
};

namespace detail {

/// Cell occupancy of an integer rectilinear polygon over its bounding box.
struct CellSet {
  int x0 = 0;
  int y0 = 0;
  Grid<uint8_t> cells;
};

inline CellSet to_cells(const Polygon& poly) {
  const Bounds b = bounds(poly);
  CellSet cs;
  cs.x0 = static_cast<int>(b.min_x);
  cs.y0 = static_cast<int>(b.min_y);
  cs.cells = Grid<uint8_t>(static_cast<int>(b.width()),
                           static_cast<int>(b.height()), 0);
  const RasterTransform tf{1.0, -b.min_x, -b.min_y};
  scan_polygon(tf.apply(poly), cs.cells.width(), cs.cells.height(),
               [&](int x, int y) { cs.cells(x, y) = 1; });
  return cs;
}

inline std::size_t count_4_connected(const Grid<uint8_t>& g, int sx, int sy,
                                     uint8_t value) {
  Grid<uint8_t> seen(g.width(), g.height(), 0);
  std::vector<std::pair<int, int>> stack{{sx, sy}};
  seen(sx, sy) = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    ++count;
    const int nx[4] = {x + 1, x - 1, x, x};
    const int ny[4] = {y, y, y + 1, y - 1};
    for (int k = 0; k < 4; ++k) {
      if (g.in_bounds(nx[k], ny[k]) && !seen(nx[k], ny[k]) &&
          g(nx[k], ny[k]) == value) {
        seen(nx[k], ny[k]) = 1;
        stack.push_back({nx[k], ny[k]});
      }
    }
  }
  return count;
}

/// A cell set traces to exactly one simple ring when it is non-empty,
/// 4-connected, free of holes, and has no diagonal-only contacts.
inline bool is_simple_cell_set(const Grid<uint8_t>& cells) {
  Grid<uint8_t> padded(cells.width() + 2, cells.height() + 2, 0);
  std::size_t filled = 0;
  int sx = -1, sy = -1;
  for (int y = 0; y < cells.height(); ++y) {
    for (int x = 0; x < cells.width(); ++x) {
      if (cells(x, y)) {
        padded(x + 1, y + 1) = 1;
        ++filled;
        if (sx < 0) sx = x + 1, sy = y + 1;
      }
    }
  }
  if (filled == 0) return false;
  if (count_4_connected(padded, sx, sy, 1) != filled) return false;
  if (count_4_connected(padded, 0, 0, 0) != padded.size() - filled) {
    return false;
  }
  for (int y = 0; y + 1 < padded.height(); ++y) {
    for (int x = 0; x + 1 < padded.width(); ++x) {
      const bool a = padded(x, y), b = padded(x + 1, y);
      const bool c = padded(x, y + 1), d = padded(x + 1, y + 1);
      if ((a && d && !b && !c) || (b && c && !a && !d)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Returns `plan` with the notch rectangle of `op` removed. The outline is
/// re-traced counter-clockwise with collinear vertices merged. Openings that
/// no longer lie on the outline and all ground-truth rooms are dropped.
inline Floorplan squeeze(const Floorplan& plan, const SqueezeOp& op) {
  const Polygon& poly = plan.vertices;
  if (poly.size() < 4 || !is_rectilinear(poly) || !is_integral(poly)) {
    throw Error(ErrorCode::kInvalidSqueeze,
                "squeeze needs an integer rectilinear outline");
  }
  if (op.start < 0 || op.end <= op.start || op.depth <= 0) {
    throw Error(ErrorCode::kInvalidSqueeze,
                "need 0 <= start < end and depth > 0");
  }
  detail::CellSet cs = detail::to_cells(poly);
  const int w = cs.cells.width();
  const int h = cs.cells.height();
  const bool horizontal = op.side == Side::kNorth || op.side == Side::kSouth;
  const int along = horizontal ? w : h;
  const int across = horizontal ? h : w;
  if (op.end > along) {
    throw Error(ErrorCode::kInvalidSqueeze, "notch extends past the side");
  }
  if (op.depth >= across) {
    throw Error(ErrorCode::kInvalidSqueeze,
                "notch reaches the opposite side");
  }
  Box notch;
  switch (op.side) {
    case Side::kNorth: notch = {op.start, h - op.depth, op.end, h}; break;
    case Side::kSouth: notch = {op.start, 0, op.end, op.depth}; break;
    case Side::kEast: notch = {w - op.depth, op.start, w, op.end}; break;
    case Side::kWest: notch = {0, op.start, op.depth, op.end}; break;
  }
  std::size_t removed = 0;
  for (int y = notch.y0; y < notch.y1; ++y) {
    for (int x = notch.x0; x < notch.x1; ++x) {
      if (cs.cells(x, y)) {
        cs.cells(x, y) = 0;
        ++removed;
      }
    }
  }
  if (removed == 0) {
    throw Error(ErrorCode::kInvalidSqueeze, "notch falls outside the polygon");
  }
  if (!detail::is_simple_cell_set(cs.cells)) {
    throw Error(ErrorCode::kInvalidSqueeze,
                "notch would disconnect or pinch the interior");
  }
  auto rings = trace_cells(w, h, [&](int x, int y) { return cs.cells(x, y) != 0; });
  if (rings.size() != 1) {
    throw Error(ErrorCode::kInvalidSqueeze, "result is not a single ring");
  }
  Floorplan out;
  out.meters_per_pixel = plan.meters_per_pixel;
  for (Point p : rings.front()) {
    out.vertices.push_back({p.x + cs.x0, p.y + cs.y0});
  }
  out.edge_flags.assign(out.vertices.size(), EdgeFlag::kAxisAligned);
  for (const Opening& o : plan.openings) {
    if (detail::segment_on_boundary(out.vertices, o.a, o.b)) {
      out.openings.push_back(o);
    }
  }
  return out;
}

}  // namespace floorgrid

#endif  // FLOORGRID_FLOORPLAN_HPP_
