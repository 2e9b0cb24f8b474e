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

#ifndef FLOORGRID_SYNTH_HPP_
#define FLOORGRID_SYNTH_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "floorgrid/density.hpp"
#include "floorgrid/error.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/raster.hpp"

namespace floorgrid {

/// Portable seeded generator: mt19937_64 output is fixed by the standard, and
/// the bounded draw below avoids implementation-defined distributions.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n).
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform integer in [lo, hi].
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct SynthOptions {
  /// Base height in pixels; 0 means square.
  int base_height = 0;
  /// Physical width of the base outline.
  double base_extent_m = 12.8;
  int max_rooms = 6;
  int room_classes = 8;
  int retries_per_op = 32;
};

/// Draws one random squeeze whose notch spans at least an eighth of the side
/// and at most half of the perpendicular extent.
inline SqueezeOp random_squeeze(SeededRng& rng, int width, int height) {
  SqueezeOp op;
  op.side = static_cast<Side>(rng.below(4));
  const bool horizontal = op.side == Side::kNorth || op.side == Side::kSouth;
  const int along = horizontal ? width : height;
  const int across = horizontal ? height : width;
  const int min_len = std::max(2, along / 8);
  const int min_depth = std::max(1, across / 8);
  const int max_depth = std::max(min_depth, across / 2);
  op.start = rng.between(0, along - min_len);
  op.end = rng.between(op.start + min_len, along);
  op.depth = rng.between(min_depth, max_depth);
  return op;
}

namespace detail {

/// Region adjacency (4-neighbour contact) of a clustered density map.
inline std::vector<std::set<int>> region_adjacency(const DensityRegionSet& set) {
  Grid<int32_t> id(set.width, set.height, -1);
  for (const DensityRegion& r : set.regions) {
    for (uint32_t i : r.pixels) id[i] = r.id;
  }
  std::vector<std::set<int>> adj(set.regions.size());
  for (int y = 0; y < set.height; ++y) {
    for (int x = 0; x < set.width; ++x) {
      const int a = id(x, y);
      if (a < 0) continue;
      if (x + 1 < set.width && id(x + 1, y) >= 0 && id(x + 1, y) != a) {
        adj[a].insert(id(x + 1, y));
        adj[id(x + 1, y)].insert(a);
      }
      if (y + 1 < set.height && id(x, y + 1) >= 0 && id(x, y + 1) != a) {
        adj[a].insert(id(x, y + 1));
        adj[id(x, y + 1)].insert(a);
      }
    }
  }
  return adj;
}

/// Merges every room whose cells sit in a hole of another room into that
/// room, until each room traces to a single ring.
inline void close_room_holes(Grid<int32_t>& room, int room_count) {
  const int w = room.width();
  const int h = room.height();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < room_count && !changed; ++r) {
      Grid<uint8_t> reached(w + 2, h + 2, 0);
      auto blocked = [&](int px, int py) {
        const int x = px - 1, y = py - 1;
        return x >= 0 && y >= 0 && x < w && y < h && room(x, y) == r;
      };
      std::vector<std::pair<int, int>> stack{{0, 0}};
      reached(0, 0) = 1;
      bool present = false;
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        const int nx[4] = {x + 1, x - 1, x, x};
        const int ny[4] = {y, y, y + 1, y - 1};
        for (int k = 0; k < 4; ++k) {
          if (!reached.in_bounds(nx[k], ny[k]) || reached(nx[k], ny[k])) continue;
          if (blocked(nx[k], ny[k])) {
            present = true;
            continue;
          }
          reached(nx[k], ny[k]) = 1;
          stack.push_back({nx[k], ny[k]});
        }
      }
      if (!present) continue;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const int32_t other = room(x, y);
          if (other >= 0 && other != r && !reached(x + 1, y + 1)) {
            for (int32_t& v : room.cells()) {
              if (v == other) v = r;
            }
            changed = true;
          }
        }
      }
    }
  }
}

}  // namespace detail

/// Ground-truth rooms built as random connected unions of the plan's own
/// density regions (computed at one raster pixel per plan unit), so that
/// region voting reproduces them exactly.
inline std::vector<Room> synth_rooms(const Floorplan& plan, SeededRng& rng,
                                     const SynthOptions& opt = {}) {
  const Bounds b = bounds(plan.vertices);
  const RasterTransform tf{1.0, -b.min_x, -b.min_y};
  const int w = static_cast<int>(b.width());
  const int h = static_cast<int>(b.height());
  const RasterMask mask = rasterize_with(plan, tf, w, h);
  const DensityRegionSet set = cluster_density_regions(density_map(mask));
  const auto adj = detail::region_adjacency(set);
  const int n = static_cast<int>(set.regions.size());

  const int room_count =
      n == 1 ? 1 : rng.between(2, std::min(n, std::max(2, opt.max_rooms)));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<int>(rng.below(i + 1))]);
  }
  std::vector<int> room_of(n, -1);
  for (int r = 0; r < room_count; ++r) room_of[order[r]] = r;
  int assigned = room_count;
  while (assigned < n) {
    std::vector<int> frontier;
    for (int i = 0; i < n; ++i) {
      if (room_of[i] >= 0) continue;
      for (int j : adj[i]) {
        if (room_of[j] >= 0) {
          frontier.push_back(i);
          break;
        }
      }
    }
    const int pick = frontier[rng.below(frontier.size())];
    std::vector<int> choices;
    for (int j : adj[pick]) {
      if (room_of[j] >= 0) choices.push_back(room_of[j]);
    }
    room_of[pick] = choices[rng.below(choices.size())];
    ++assigned;
  }

  Grid<int32_t> room(w, h, -1);
  for (const DensityRegion& r : set.regions) {
    for (uint32_t i : r.pixels) room[i] = room_of[r.id];
  }
  detail::close_room_holes(room, room_count);

  std::vector<Room> rooms;
  for (int r = 0; r < room_count; ++r) {
    auto rings = trace_cells(w, h, [&](int x, int y) { return room(x, y) == r; });
    if (rings.empty()) continue;
    Room out;
    out.label = static_cast<int>(rng.below(static_cast<uint64_t>(opt.room_classes)));
    for (Point p : rings.front()) out.polygon.push_back({p.x + b.min_x, p.y + b.min_y});
    rooms.push_back(std::move(out));
  }
  return rooms;
}

/// Base rectangle transformed by up to `n_ops` random squeezes. Rejected
/// squeezes are redrawn; once an op exhausts its retry budget no further ops
/// are applied. Deterministic for a fixed seed.
inline Floorplan synth_floorplan(uint64_t seed, int n_ops, int base_size,
                                 const SynthOptions& opt = {}) {
  if (n_ops < 0 || base_size < 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "synth needs n_ops >= 0 and base_size >= 16");
  }
  SeededRng rng(seed);
  const int base_h = opt.base_height > 0 ? opt.base_height : base_size;
  Floorplan plan = make_rectangle(base_size, base_h, opt.base_extent_m / base_size);
  for (int op = 0; op < n_ops; ++op) {
    bool applied = false;
    for (int attempt = 0; attempt < opt.retries_per_op && !applied; ++attempt) {
      const SqueezeOp sq = random_squeeze(rng, base_size, base_h);
      try {
        Floorplan next = squeeze(plan, sq);
        const Bounds nb = bounds(next.vertices);
        if (nb.width() != base_size || nb.height() != base_h) continue;
        plan = std::move(next);
        applied = true;
      } catch (const Error&) {
      }
    }
    if (!applied) break;
  }
  plan.rooms = synth_rooms(plan, rng, opt);
  return plan;
}

}  // namespace floorgrid

#endif  // FLOORGRID_SYNTH_HPP_
