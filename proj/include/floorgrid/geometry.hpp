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

#ifndef FLOORGRID_GEOMETRY_HPP_
#define FLOORGRID_GEOMETRY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "floorgrid/grid.hpp"

namespace floorgrid {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// Closed ring; the last vertex connects back to the first.
using Polygon = std::vector<Point>;

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

inline Bounds bounds(const Polygon& poly) {
  Bounds b{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
  for (const Point& p : poly) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

/// Shoelace area; positive for counter-clockwise rings.
inline double signed_area(const Polygon& poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * twice;
}

inline bool is_axis_aligned(Point a, Point b) { return a.x == b.x || a.y == b.y; }

inline bool is_rectilinear(const Polygon& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (!is_axis_aligned(poly[i], poly[(i + 1) % poly.size()])) return false;
  }
  return true;
}

inline bool is_integral(const Polygon& poly) {
  return std::all_of(poly.begin(), poly.end(), [](Point p) {
    return p.x == std::floor(p.x) && p.y == std::floor(p.y);
  });
}

inline double distance_to_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point q{a.x + t * ab.x, a.y + t * ab.y};
  return std::hypot(p.x - q.x, p.y - q.y);
}

/// Crossing-number test. A point exactly on a vertical boundary belongs to
/// the polygon on its west side; on a horizontal boundary, to the south side.
inline bool point_in_polygon(Point p, const Polygon& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    if ((a.y < p.y) != (b.y < p.y)) {
      const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (xi >= p.x) inside = !inside;
    }
  }
  return inside;
}

namespace detail {

inline int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

inline bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace detail

/// Closed-segment intersection test (touching counts).
inline bool segments_intersect(Point a, Point b, Point c, Point d) {
  using detail::on_segment;
  using detail::orientation;
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

/// True when the ring has at least three distinct vertices and no two edges
/// meet except consecutive edges at their shared vertex.
inline bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) return false;
  }
  if (std::abs(signed_area(poly)) == 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    // Consecutive edges may only share their common vertex.
    const Point c = poly[(i + 2) % n];
    if (detail::orientation(a, b, c) == 0 && dot(b - a, c - b) < 0.0) {
      return false;
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

/// Drops repeated vertices and vertices lying on the straight line between
/// their neighbours.
inline Polygon merge_collinear(const Polygon& poly) {
  Polygon out = poly;
  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
      const std::size_t n = out.size();
      const Point prev = out[(i + n - 1) % n];
      const Point cur = out[i];
      const Point next = out[(i + 1) % n];
      if (cur == prev || detail::orientation(prev, cur, next) == 0) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return out;
}

/// Rotates the ring so it starts at its lowest-then-westmost vertex.
inline Polygon canonical_start(Polygon poly) {
  if (poly.empty()) return poly;
  auto it = std::min_element(poly.begin(), poly.end(), [](Point a, Point b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  std::rotate(poly.begin(), it, poly.end());
  return poly;
}

/// Uniform scale then translate, mapping plan units to raster pixels.
struct RasterTransform {
  double scale = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;

  Point apply(Point p) const {
    return {p.x * scale + offset_x, p.y * scale + offset_y};
  }
  Polygon apply(const Polygon& poly) const {
    Polygon out;
    out.reserve(poly.size());
    for (const Point& p : poly) out.push_back(apply(p));
    return out;
  }

  friend bool operator==(const RasterTransform&,
                         const RasterTransform&) = default;
};

/// Scanline fill: every pixel whose center lies inside `poly` (already in
/// grid coordinates) is passed to `visit(x, y)`. Ownership of centers lying
/// exactly on an edge follows point_in_polygon.
template <typename Visit>
void scan_polygon(const Polygon& poly, int width, int height, Visit&& visit) {
  if (poly.size() < 3) return;
  const Bounds b = bounds(poly);
  const int y_begin = std::max(0, static_cast<int>(std::floor(b.min_y - 0.5)));
  const int y_end =
      std::min(height, static_cast<int>(std::ceil(b.max_y + 0.5)) + 1);
  std::vector<double> xs;
  const std::size_t n = poly.size();
  for (int y = y_begin; y < y_end; ++y) {
    const double yc = y + 0.5;
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = poly[i];
      const Point c = poly[(i + 1) % n];
      if ((a.y < yc) != (c.y < yc)) {
        xs.push_back(a.x + (yc - a.y) * (c.x - a.x) / (c.y - a.y));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Centers cx = x + 0.5 with xs[k] < cx <= xs[k + 1].
      const int first =
          std::max(0, static_cast<int>(std::floor(xs[k] - 0.5)) + 1);
      const int last =
          std::min(width - 1, static_cast<int>(std::floor(xs[k + 1] - 0.5)));
      for (int x = first; x <= last; ++x) visit(x, y);
    }
  }
}

/// Traces the outline of the cells selected by `inside` into closed rings in
/// cell-corner coordinates (cell (x, y) spans [x, x+1] x [y, y+1]). Outer
/// rings are counter-clockwise, holes clockwise. Diagonally touching cells are
/// not considered connected, so each 4-connected component without holes
/// yields exactly one ring.
template <typename Inside>
std::vector<Polygon> trace_cells(int width, int height, Inside&& inside) {
  // Directions: 0 east, 1 north, 2 west, 3 south.
  constexpr std::array<int, 4> kDx{1, 0, -1, 0};
  constexpr std::array<int, 4> kDy{0, 1, 0, -1};
  const int vw = width + 1;
  const auto vid = [vw](int x, int y) { return y * vw + x; };
  auto cell = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < width && y < height && inside(x, y);
  };

  // Each lattice vertex has at most two outgoing boundary edges.
  std::vector<std::array<int8_t, 4>> out(
      static_cast<std::size_t>(vw) * (height + 1), {0, 0, 0, 0});
  std::vector<int> starts;
  auto add = [&](int x, int y, int dir) {
    out[vid(x, y)][dir] = 1;
    starts.push_back(vid(x, y) * 4 + dir);
  };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!cell(x, y)) continue;
      if (!cell(x, y - 1)) add(x, y, 0);
      if (!cell(x + 1, y)) add(x + 1, y, 1);
      if (!cell(x, y + 1)) add(x + 1, y + 1, 2);
      if (!cell(x - 1, y)) add(x, y + 1, 3);
    }
  }
  std::sort(starts.begin(), starts.end());

  std::vector<Polygon> rings;
  for (int start : starts) {
    int v = start / 4;
    int dir = start % 4;
    if (!out[v][dir]) continue;
    Polygon ring;
    int x = v % vw;
    int y = v / vw;
    int prev_dir = -1;
    while (out[vid(x, y)][dir]) {
      out[vid(x, y)][dir] = 0;
      if (dir != prev_dir) ring.push_back({double(x), double(y)});
      prev_dir = dir;
      x += kDx[dir];
      y += kDy[dir];
      // Prefer hugging the current cell: left, straight, then right.
      const std::array<int, 3> order{(dir + 1) % 4, dir, (dir + 3) % 4};
      int next = -1;
      for (int d : order) {
        if (out[vid(x, y)][d]) {
          next = d;
          break;
        }
      }
      if (next < 0) break;
      dir = next;
    }
    ring = canonical_start(merge_collinear(ring));
    if (ring.size() >= 4) rings.push_back(std::move(ring));
  }
  return rings;
}

}  // namespace floorgrid

#endif  // FLOORGRID_GEOMETRY_HPP_
