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

#ifndef FLOORGRID_LABELING_HPP_
#define FLOORGRID_LABELING_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floorgrid/error.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/grid.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/raster.hpp"

namespace floorgrid {

/// Per-pixel class ids, -1 off the interior.
struct LabelMap {
  Grid<int32_t> labels;
  std::vector<std::string> class_names;

  int width() const { return labels.width(); }
  int height() const { return labels.height(); }

  /// One past the largest class id present.
  int class_count() const {
    int c = 0;
    for (int32_t v : labels.cells()) c = std::max(c, v + 1);
    return std::max<int>(c, static_cast<int>(class_names.size()));
  }

  friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

struct RegionLabels {
  std::vector<int32_t> labels;

  friend bool operator==(const RegionLabels&, const RegionLabels&) = default;
};

/// Rasterizes the plan's rooms onto the interior of `mask`. Interior pixels
/// not covered by a room get class 0; plans without rooms are all class 0.
inline LabelMap room_label_map(const Floorplan& plan, const RasterMask& mask) {
  LabelMap out{Grid<int32_t>(mask.width(), mask.height(), -1), {}};
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    if (mask.interior(i)) out.labels[i] = 0;
  }
  for (const Room& room : plan.rooms) {
    scan_polygon(mask.transform.apply(room.polygon), mask.width(),
                 mask.height(), [&](int x, int y) {
                   if (mask.interior(x, y)) out.labels(x, y) = room.label;
                 });
  }
  return out;
}

/// Moves every internal boundary `shift` pixels north-east: each interior
/// pixel takes the label of the interior pixel `shift` steps south-west of
/// it, when there is one.
inline LabelMap perturb_labels(const LabelMap& gt, int shift) {
  LabelMap out = gt;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      if (gt.labels(x, y) < 0) continue;
      const int sx = x - shift;
      const int sy = y - shift;
      if (gt.labels.in_bounds(sx, sy) && gt.labels(sx, sy) >= 0) {
        out.labels(x, y) = gt.labels(sx, sy);
      }
    }
  }
  return out;
}

namespace detail {

inline void require_same_shape(const Grid<int32_t>& a, const Grid<int32_t>& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kShapeMismatch,
                "label maps differ in size: " + std::to_string(a.width()) +
                    "x" + std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

/// Most frequent value in `counts`; ties go to the lowest index. -1 if empty.
inline int32_t modal(const std::vector<std::size_t>& counts) {
  int32_t best = -1;
  std::size_t best_count = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > best_count) {
      best_count = counts[c];
      best = static_cast<int32_t>(c);
    }
  }
  return best;
}

}  // namespace detail

/// Expands region labels back onto pixels.
inline LabelMap expand_labels(const UnitRegionPartition& p,
                              const RegionLabels& labels,
                              std::vector<std::string> class_names = {}) {
  LabelMap out{Grid<int32_t>(p.width(), p.height(), -1), std::move(class_names)};
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    const int32_t r = p.region_id[i];
    if (r >= 0) out.labels[i] = labels.labels[r];
  }
  return out;
}

/// Each region takes the modal ground-truth class of its pixels (lowest id on
/// ties); the second value expands those labels back to pixels.
inline std::pair<RegionLabels, LabelMap> vote_labels(const UnitRegionPartition& p,
                                                     const LabelMap& gt) {
  detail::require_same_shape(p.region_id, gt.labels);
  const int classes = gt.class_count();
  RegionLabels out;
  out.labels.reserve(p.regions.size());
  std::vector<std::size_t> counts(static_cast<std::size_t>(classes));
  for (const UnitRegion& r : p.regions) {
    std::fill(counts.begin(), counts.end(), 0);
    for (uint32_t i : r.pixels) {
      const int32_t c = gt.labels[i];
      if (c >= 0) ++counts[c];
    }
    out.labels.push_back(detail::modal(counts));
  }
  LabelMap expanded = expand_labels(p, out, gt.class_names);
  return {std::move(out), std::move(expanded)};
}

struct IouResult {
  /// Percentages; empty for classes absent from both maps.
  std::vector<std::optional<double>> per_class;
  /// Mean over the classes present in either map.
  double mean = 0.0;
  /// Share of compared pixels with equal labels, in percent.
  double pixel_accuracy = 0.0;
};

/// Pixels where either map is -1 are ignored.
inline IouResult iou(const LabelMap& pred, const LabelMap& gt, int classes) {
  detail::require_same_shape(pred.labels, gt.labels);
  if (classes < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative class count");
  }
  std::vector<std::size_t> inter(classes, 0), uni(classes, 0);
  std::size_t compared = 0, correct = 0;
  for (std::size_t i = 0; i < gt.labels.size(); ++i) {
    const int32_t g = gt.labels[i];
    const int32_t q = pred.labels[i];
    if (g < 0 || q < 0) continue;
    if (g >= classes || q >= classes) {
      throw Error(ErrorCode::kInvalidArgument, "class id out of range");
    }
    ++compared;
    if (g == q) {
      ++correct;
      ++inter[g];
      ++uni[g];
    } else {
      ++uni[g];
      ++uni[q];
    }
  }
  IouResult r;
  r.per_class.resize(classes);
  double sum = 0.0;
  int present = 0;
  for (int c = 0; c < classes; ++c) {
    if (uni[c] == 0) continue;
    const double v = 100.0 * static_cast<double>(inter[c]) / static_cast<double>(uni[c]);
    r.per_class[c] = v;
    sum += v;
    ++present;
  }
  r.mean = present > 0 ? sum / present : 100.0;
  r.pixel_accuracy =
      compared > 0 ? 100.0 * static_cast<double>(correct) / static_cast<double>(compared)
                   : 100.0;
  return r;
}

// ---------------------------------------------------------------------------
// Boundary F-score

enum class BoundaryMode { kAll, kInternal };

struct BoundaryScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

namespace detail {

/// Interior pixels whose east or north interior neighbour has another class,
/// plus interior pixels touching the exterior or the grid edge. Taking one
/// side of each internal class change keeps the boundary one pixel thick.
inline Grid<uint8_t> boundary_pixels(const LabelMap& m, const Grid<uint8_t>& outline) {
  const Grid<int32_t>& g = m.labels;
  Grid<uint8_t> out(g.width(), g.height(), 0);
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const int32_t c = g(x, y);
      if (c < 0) continue;
      const bool east = g.in_bounds(x + 1, y) && g(x + 1, y) >= 0 && g(x + 1, y) != c;
      const bool north = g.in_bounds(x, y + 1) && g(x, y + 1) >= 0 && g(x, y + 1) != c;
      out(x, y) = east || north || outline(x, y);
    }
  }
  return out;
}

/// Interior pixels with a 4-neighbour that is exterior or off the grid.
inline Grid<uint8_t> outline_pixels(const Grid<int32_t>& interior_labels) {
  const Grid<int32_t>& g = interior_labels;
  Grid<uint8_t> out(g.width(), g.height(), 0);
  auto outside = [&](int x, int y) { return !g.in_bounds(x, y) || g(x, y) < 0; };
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (g(x, y) < 0) continue;
      out(x, y) = outside(x + 1, y) || outside(x - 1, y) || outside(x, y + 1) ||
                  outside(x, y - 1);
    }
  }
  return out;
}

/// Square (Chebyshev) dilation by `radius`, separable.
inline Grid<uint8_t> dilate(const Grid<uint8_t>& g, int radius) {
  if (radius <= 0) return g;
  const int w = g.width();
  const int h = g.height();
  Grid<uint8_t> tmp(w, h, 0), out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    int last = -1'000'000;
    for (int x = 0; x < w + radius; ++x) {
      if (x < w && g(x, y)) last = x;
      const int cx = x - radius;
      if (cx >= 0 && cx < w && x - last <= 2 * radius) tmp(cx, y) = 1;
    }
  }
  for (int x = 0; x < w; ++x) {
    int last = -1'000'000;
    for (int y = 0; y < h + radius; ++y) {
      if (y < h && tmp(x, y)) last = y;
      const int cy = y - radius;
      if (cy >= 0 && cy < h && y - last <= 2 * radius) out(x, cy) = 1;
    }
  }
  return out;
}

}  // namespace detail

/// Boundary precision/recall/F with a Chebyshev tolerance of `tol_px`.
/// The interior of `outline_mask` defines the floorplan outline; in Internal
/// mode boundary pixels within `tol_px` of that outline are dropped. An empty
/// prediction scores precision 1 only if the ground truth is also empty, and
/// symmetrically for recall.
inline BoundaryScore boundary_f(const LabelMap& pred, const LabelMap& gt,
                                int tol_px, BoundaryMode mode,
                                const RasterMask& outline_mask) {
  detail::require_same_shape(pred.labels, gt.labels);
  if (!outline_mask.cells.same_shape(gt.labels)) {
    throw Error(ErrorCode::kShapeMismatch, "outline mask differs in size");
  }
  if (tol_px < 0) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be >= 0");
  }
  Grid<int32_t> inside(gt.width(), gt.height(), -1);
  for (std::size_t i = 0; i < inside.size(); ++i) {
    if (outline_mask.interior(i)) inside[i] = 0;
  }
  const Grid<uint8_t> outline = detail::outline_pixels(inside);
  Grid<uint8_t> pb = detail::boundary_pixels(pred, outline);
  Grid<uint8_t> gb = detail::boundary_pixels(gt, outline);
  if (mode == BoundaryMode::kInternal) {
    const Grid<uint8_t> near_outline = detail::dilate(outline, tol_px);
    for (std::size_t i = 0; i < pb.size(); ++i) {
      if (near_outline[i]) pb[i] = gb[i] = 0;
    }
  }
  const Grid<uint8_t> gd = detail::dilate(gb, tol_px);
  const Grid<uint8_t> pd = detail::dilate(pb, tol_px);
  std::size_t pred_n = 0, gt_n = 0, pred_hit = 0, gt_hit = 0;
  for (std::size_t i = 0; i < pb.size(); ++i) {
    if (pb[i]) {
      ++pred_n;
      pred_hit += gd[i];
    }
    if (gb[i]) {
      ++gt_n;
      gt_hit += pd[i];
    }
  }
  BoundaryScore s;
  s.precision = pred_n > 0 ? double(pred_hit) / double(pred_n) : (gt_n == 0 ? 1.0 : 0.0);
  s.recall = gt_n > 0 ? double(gt_hit) / double(gt_n) : (pred_n == 0 ? 1.0 : 0.0);
  s.f = s.precision + s.recall > 0.0
            ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
            : 0.0;
  return s;
}

}  // namespace floorgrid

#endif  // FLOORGRID_LABELING_HPP_
