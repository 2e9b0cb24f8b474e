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

#ifndef FLOORGRID_PARTITION_HPP_
#define FLOORGRID_PARTITION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "floorgrid/density.hpp"
#include "floorgrid/error.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/grid.hpp"
#include "floorgrid/raster.hpp"

namespace floorgrid {

/// Splitting strategy (M x N, h): grid counts per density region and the
/// minimum cell size in meters.
struct SplitStrategy {
  int grid_m = 1;
  int grid_n = 1;
  double min_size_m = 1.0;

  friend bool operator==(const SplitStrategy&, const SplitStrategy&) = default;
};

inline void check(const SplitStrategy& s) {
  if (s.grid_m < 1 || s.grid_n < 1 || !(s.min_size_m > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "strategy needs grid >= 1 and min size > 0");
  }
}

/// Maximal 4-connected interior component sharing one raw density sum.
/// `pixels` holds sorted linear grid indices.
struct DensityRegion {
  int id = 0;
  std::vector<uint32_t> pixels;
  uint32_t density_key = 0;
  Box bbox;
  bool merged = false;

  friend bool operator==(const DensityRegion&, const DensityRegion&) = default;
};

struct DensityRegionSet {
  int width = 0;
  int height = 0;
  std::vector<DensityRegion> regions;

  friend bool operator==(const DensityRegionSet&,
                         const DensityRegionSet&) = default;
};

struct UnitRegion {
  int id = 0;
  /// Index of the density region the cell was cut from; -1 for uniform grids.
  int parent = -1;
  int cell_i = 0;
  int cell_j = 0;
  /// Grid cell the region was clipped to.
  Box cell;
  std::vector<uint32_t> pixels;
  Box bbox;
  uint32_t density_key = 0;

  friend bool operator==(const UnitRegion&, const UnitRegion&) = default;
};

struct UnitRegionPartition {
  /// Region index per pixel, -1 off the interior.
  Grid<int32_t> region_id;
  std::vector<UnitRegion> regions;
  SplitStrategy strategy;
  /// Meters per raster pixel.
  double scale = 1.0;

  int width() const { return region_id.width(); }
  int height() const { return region_id.height(); }
  std::size_t size() const { return regions.size(); }

  friend bool operator==(const UnitRegionPartition&,
                         const UnitRegionPartition&) = default;
};

// ---------------------------------------------------------------------------
// Density regions

/// Flood fill in scanline order, so region ids follow the first pixel of each
/// region.
inline DensityRegionSet cluster_density_regions(const DensityMap& d) {
  const int w = d.width();
  const int h = d.height();
  const Grid<uint32_t>& key = d.raw_sums;
  Grid<int32_t> label(w, h, -1);
  DensityRegionSet out{w, h, {}};
  std::vector<uint32_t> stack;
  for (int sy = 0; sy < h; ++sy) {
    for (int sx = 0; sx < w; ++sx) {
      if (key(sx, sy) == 0 || label(sx, sy) >= 0) continue;
      DensityRegion region;
      region.id = static_cast<int>(out.regions.size());
      region.density_key = key(sx, sy);
      label(sx, sy) = region.id;
      stack.assign(1, static_cast<uint32_t>(key.index(sx, sy)));
      while (!stack.empty()) {
        const uint32_t i = stack.back();
        stack.pop_back();
        region.pixels.push_back(i);
        const int x = static_cast<int>(i % w);
        const int y = static_cast<int>(i / w);
        region.bbox.extend(x, y);
        const int nx[4] = {x + 1, x - 1, x, x};
        const int ny[4] = {y, y, y + 1, y - 1};
        for (int k = 0; k < 4; ++k) {
          if (!key.in_bounds(nx[k], ny[k])) continue;
          if (label(nx[k], ny[k]) >= 0 || key(nx[k], ny[k]) != region.density_key) {
            continue;
          }
          label(nx[k], ny[k]) = region.id;
          stack.push_back(static_cast<uint32_t>(key.index(nx[k], ny[k])));
        }
      }
      std::sort(region.pixels.begin(), region.pixels.end());
      out.regions.push_back(std::move(region));
    }
  }
  if (out.regions.empty()) {
    throw Error(ErrorCode::kEmptyInterior, "density map has no interior");
  }
  return out;
}

namespace detail {

struct DisjointSet {
  std::vector<int> parent;

  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  /// The smaller index becomes the representative.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace detail

/// Unions the density regions whose pixels lie within one pixel of the same
/// sloping outline edge. Identity when the plan has no sloping edge.
inline DensityRegionSet merge_sloping(const DensityRegionSet& set,
                                      const Floorplan& plan,
                                      const RasterTransform& tf) {
  const int w = set.width;
  const std::size_t n = set.regions.size();
  detail::DisjointSet ds(n);
  bool any = false;
  for (std::size_t e = 0; e < plan.edge_count(); ++e) {
    if (plan.edge_flag(e) != EdgeFlag::kSloping) continue;
    const auto [pa, pb] = plan.edge(e);
    const Point a = tf.apply(pa);
    const Point b = tf.apply(pb);
    const Bounds eb = bounds({a, b});
    int first = -1;
    for (std::size_t r = 0; r < n; ++r) {
      const Box& bb = set.regions[r].bbox;
      if (bb.x1 + 1 < eb.min_x || bb.x0 - 1 > eb.max_x ||
          bb.y1 + 1 < eb.min_y || bb.y0 - 1 > eb.max_y) {
        continue;
      }
      const bool touches = std::any_of(
          set.regions[r].pixels.begin(), set.regions[r].pixels.end(),
          [&](uint32_t i) {
            const Point c{double(i % w) + 0.5, double(i / w) + 0.5};
            return distance_to_segment(c, a, b) <= 1.0;
          });
      if (!touches) continue;
      if (first < 0) {
        first = static_cast<int>(r);
      } else {
        ds.unite(first, static_cast<int>(r));
        any = true;
      }
    }
  }
  if (!any) return set;

  DensityRegionSet out{set.width, set.height, {}};
  std::vector<int> new_id(n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    const int root = ds.find(static_cast<int>(r));
    if (new_id[root] < 0) {
      new_id[root] = static_cast<int>(out.regions.size());
      DensityRegion merged = set.regions[root];
      merged.id = new_id[root];
      out.regions.push_back(std::move(merged));
      continue;
    }
    DensityRegion& into = out.regions[new_id[root]];
    const DensityRegion& from = set.regions[r];
    into.pixels.insert(into.pixels.end(), from.pixels.begin(), from.pixels.end());
    into.bbox.extend(from.bbox.x0, from.bbox.y0);
    into.bbox.extend(from.bbox.x1 - 1, from.bbox.y1 - 1);
    into.merged = true;
  }
  for (DensityRegion& r : out.regions) {
    std::sort(r.pixels.begin(), r.pixels.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unit regions

namespace detail {

/// Cell index of each offset in [0, extent) when cut into `parts` cells;
/// the remainder goes to the leading cells.
inline std::vector<int> cut_cells(int extent, int parts) {
  std::vector<int> cell(static_cast<std::size_t>(extent));
  const int base = extent / parts;
  const int rem = extent % parts;
  int offset = 0;
  for (int c = 0; c < parts; ++c) {
    const int len = base + (c < rem ? 1 : 0);
    for (int k = 0; k < len; ++k) cell[offset + k] = c;
    offset += len;
  }
  return cell;
}

inline Box cut_box(const Box& box, int parts_x, int parts_y, int i, int j) {
  auto span = [](int lo, int extent, int parts, int c) {
    const int base = extent / parts;
    const int rem = extent % parts;
    const int begin = lo + c * base + std::min(c, rem);
    return std::pair{begin, begin + base + (c < rem ? 1 : 0)};
  };
  const auto [x0, x1] = span(box.x0, box.width(), parts_x, i);
  const auto [y0, y1] = span(box.y0, box.height(), parts_y, j);
  return {x0, y0, x1, y1};
}

/// Splits a pixel set over a parts_x x parts_y grid of `box`, appending the
/// non-empty cells in row-major (south-first) order.
inline void split_into(const std::vector<uint32_t>& pixels, int width,
                       const Box& box, int parts_x, int parts_y,
                       const UnitRegion& proto, std::vector<UnitRegion>& out) {
  const std::vector<int> col = cut_cells(box.width(), parts_x);
  const std::vector<int> row = cut_cells(box.height(), parts_y);
  std::vector<std::vector<uint32_t>> buckets(
      static_cast<std::size_t>(parts_x) * parts_y);
  for (uint32_t i : pixels) {
    const int x = static_cast<int>(i % width);
    const int y = static_cast<int>(i / width);
    buckets[row[y - box.y0] * parts_x + col[x - box.x0]].push_back(i);
  }
  for (int j = 0; j < parts_y; ++j) {
    for (int i = 0; i < parts_x; ++i) {
      auto& bucket = buckets[j * parts_x + i];
      if (bucket.empty()) continue;
      UnitRegion ur = proto;
      ur.cell_i = i;
      ur.cell_j = j;
      ur.cell = cut_box(box, parts_x, parts_y, i, j);
      ur.bbox = Box{};
      for (uint32_t p : bucket) {
        ur.bbox.extend(static_cast<int>(p % width), static_cast<int>(p / width));
      }
      ur.pixels = std::move(bucket);
      out.push_back(std::move(ur));
    }
  }
}

inline UnitRegionPartition finalize(int width, int height,
                                    std::vector<UnitRegion> regions,
                                    const SplitStrategy& strategy,
                                    double scale) {
  UnitRegionPartition p{Grid<int32_t>(width, height, -1), std::move(regions),
                        strategy, scale};
  for (std::size_t r = 0; r < p.regions.size(); ++r) {
    p.regions[r].id = static_cast<int>(r);
    for (uint32_t i : p.regions[r].pixels) {
      p.region_id[i] = static_cast<int32_t>(r);
    }
  }
  return p;
}

/// Grid count along one axis after the minimum-size fallback.
inline int effective_cells(int extent_px, int requested, double scale,
                           double min_size_m) {
  const double fit = std::floor(extent_px * scale / min_size_m + 1e-9);
  return std::clamp(static_cast<int>(std::min<double>(requested, fit)), 1,
                    requested);
}

}  // namespace detail

/// Slices every density region's bbox into M' x N' cells, where each axis
/// count falls back to floor(extent / h) (at least 1) when the requested
/// cells would be smaller than h meters.
inline UnitRegionPartition split_unit_regions(const DensityRegionSet& set,
                                              const SplitStrategy& s,
                                              double meters_per_pixel) {
  check(s);
  if (!(meters_per_pixel > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale must be positive");
  }
  std::vector<UnitRegion> units;
  for (const DensityRegion& region : set.regions) {
    const int mx = detail::effective_cells(region.bbox.width(), s.grid_m,
                                           meters_per_pixel, s.min_size_m);
    const int ny = detail::effective_cells(region.bbox.height(), s.grid_n,
                                           meters_per_pixel, s.min_size_m);
    UnitRegion proto;
    proto.parent = region.id;
    proto.density_key = region.density_key;
    detail::split_into(region.pixels, set.width, region.bbox, mx, ny, proto,
                       units);
  }
  return detail::finalize(set.width, set.height, std::move(units), s,
                          meters_per_pixel);
}

/// Splits every unit region factor x factor within its own bbox, ignoring
/// the minimum size. Each new region is a subset of exactly one old region.
inline UnitRegionPartition refine(const UnitRegionPartition& p, int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "refine factor must be >= 1");
  }
  if (factor == 1) return p;
  std::vector<UnitRegion> units;
  for (const UnitRegion& old : p.regions) {
    const int mx = std::min(factor, old.bbox.width());
    const int ny = std::min(factor, old.bbox.height());
    const std::size_t first = units.size();
    detail::split_into(old.pixels, p.width(), old.bbox, mx, ny, old, units);
    for (std::size_t k = first; k < units.size(); ++k) {
      units[k].cell_i += old.cell_i * factor;
      units[k].cell_j += old.cell_j * factor;
    }
  }
  return detail::finalize(p.width(), p.height(), std::move(units), p.strategy,
                          p.scale);
}

namespace detail {

inline Box interior_bbox(const RasterMask& mask) {
  Box b;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.interior(x, y)) b.extend(x, y);
    }
  }
  return b;
}

inline std::size_t uniform_cell_count(const RasterMask& mask, const Box& box,
                                      int k) {
  const std::vector<int> col = cut_cells(box.width(), k);
  const std::vector<int> row = cut_cells(box.height(), k);
  std::vector<uint8_t> hit(static_cast<std::size_t>(k) * k, 0);
  std::size_t count = 0;
  for (int y = box.y0; y < box.y1; ++y) {
    for (int x = box.x0; x < box.x1; ++x) {
      if (!mask.interior(x, y)) continue;
      uint8_t& h = hit[row[y - box.y0] * k + col[x - box.x0]];
      if (!h) {
        h = 1;
        ++count;
      }
    }
  }
  return count;
}

}  // namespace detail

/// Shape-agnostic baseline: a k x k grid over the interior bbox, cells
/// clipped to the interior. k is the smallest value whose count of
/// interior-touching cells is closest to `target_count`.
inline UnitRegionPartition uniform_partition(const RasterMask& mask,
                                             int target_count,
                                             double meters_per_pixel = 1.0) {
  if (target_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "target count must be >= 1");
  }
  const Box box = detail::interior_bbox(mask);
  if (box.empty()) {
    throw Error(ErrorCode::kEmptyInterior, "mask has no interior pixel");
  }
  const int k_max = std::min(std::max(box.width(), box.height()),
                             4 * static_cast<int>(std::ceil(std::sqrt(double(target_count)))) + 8);
  int best_k = 1;
  long best_diff = std::numeric_limits<long>::max();
  for (int k = 1; k <= k_max; ++k) {
    if (k > box.width() || k > box.height()) break;
    const long count = static_cast<long>(detail::uniform_cell_count(mask, box, k));
    const long diff = std::labs(count - target_count);
    if (diff < best_diff) {
      best_diff = diff;
      best_k = k;
    }
    if (count > 2L * target_count + 4) break;
  }
  std::vector<uint32_t> pixels;
  for (int y = box.y0; y < box.y1; ++y) {
    for (int x = box.x0; x < box.x1; ++x) {
      if (mask.interior(x, y)) {
        pixels.push_back(static_cast<uint32_t>(mask.cells.index(x, y)));
      }
    }
  }
  std::vector<UnitRegion> units;
  detail::split_into(pixels, mask.width(), box, best_k, best_k, UnitRegion{},
                     units);
  return detail::finalize(mask.width(), mask.height(), std::move(units),
                          SplitStrategy{best_k, best_k, 0.0}, meters_per_pixel);
}

/// Full pipeline from a mask: cluster, merge across sloping walls, split.
inline UnitRegionPartition partition_plan(const Floorplan& plan,
                                          const RasterMask& mask,
                                          const SplitStrategy& s) {
  const DensityMap d = density_map(mask);
  const DensityRegionSet regions =
      merge_sloping(cluster_density_regions(d), plan, mask.transform);
  return split_unit_regions(regions, s,
                            raster_meters_per_pixel(plan, mask.transform));
}

struct PartitionStats {
  std::size_t region_count = 0;
  double mean_area_m2 = 0.0;
  double min_area_m2 = 0.0;
  double max_area_m2 = 0.0;
  /// Grid cuts inside one density region that stop at the border of a
  /// neighbouring density region instead of continuing into it.
  std::size_t misaligned_cut_ends = 0;
};

inline PartitionStats partition_stats(const UnitRegionPartition& p) {
  PartitionStats s;
  s.region_count = p.regions.size();
  if (p.regions.empty()) return s;
  const double px_area = p.scale * p.scale;
  s.min_area_m2 = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const UnitRegion& r : p.regions) {
    const double a = static_cast<double>(r.pixels.size()) * px_area;
    total += a;
    s.min_area_m2 = std::min(s.min_area_m2, a);
    s.max_area_m2 = std::max(s.max_area_m2, a);
  }
  s.mean_area_m2 = total / static_cast<double>(p.regions.size());

  const Grid<int32_t>& id = p.region_id;
  auto parent = [&](int x, int y) {
    const int32_t r = id(x, y);
    return r < 0 ? -1 : p.regions[static_cast<std::size_t>(r)].parent;
  };
  // A cut between a and b in one density region is misaligned where the
  // next pixel pair across the region border is in one unit region.
  auto cut_end = [&](int ax, int ay, int bx, int by, int dx, int dy) {
    const int32_t a = id(ax, ay), b = id(bx, by);
    if (a < 0 || b < 0 || a == b || parent(ax, ay) != parent(bx, by)) return;
    for (int sgn : {-1, 1}) {
      const int cx = ax + sgn * dx, cy = ay + sgn * dy;
      const int ex = bx + sgn * dx, ey = by + sgn * dy;
      if (!id.in_bounds(cx, cy) || !id.in_bounds(ex, ey)) continue;
      const int32_t c = id(cx, cy), e = id(ex, ey);
      if (c < 0 || e < 0 || parent(cx, cy) == parent(ax, ay)) continue;
      if (parent(cx, cy) == parent(ex, ey) && c == e) ++s.misaligned_cut_ends;
    }
  };
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      if (x + 1 < p.width()) cut_end(x, y, x + 1, y, 0, 1);
      if (y + 1 < p.height()) cut_end(x, y, x, y + 1, 1, 0);
    }
  }
  return s;
}

}  // namespace floorgrid

#endif  // FLOORGRID_PARTITION_HPP_
