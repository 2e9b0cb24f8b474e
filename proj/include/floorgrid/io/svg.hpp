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

#ifndef FLOORGRID_IO_SVG_HPP_
#define FLOORGRID_IO_SVG_HPP_

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "floorgrid/density.hpp"
#include "floorgrid/encoding.hpp"
#include "floorgrid/geometry.hpp"
#include "floorgrid/labeling.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/raster.hpp"

namespace floorgrid::io {

/// Minimal SVG emitter in raster coordinates (y grows north; flipped on
/// output). Output is byte-deterministic.
class SvgCanvas {
 public:
  SvgCanvas(int width, int height) : width_(width), height_(height) {}

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

  void path(const std::vector<Polygon>& rings, const std::string& cls,
            const std::string& style) {
    if (rings.empty()) return;
    body_ << "<path class=\"" << cls << "\" d=\"";
    for (const Polygon& ring : rings) {
      for (std::size_t i = 0; i < ring.size(); ++i) {
        body_ << (i == 0 ? "M" : "L") << num(ring[i].x) << ' ' << num(height_ - ring[i].y);
      }
      body_ << 'Z';
    }
    body_ << "\" style=\"" << style << "\"/>\n";
  }

  void text(Point at, const std::string& s, const std::string& cls) {
    body_ << "<text class=\"" << cls << "\" x=\"" << num(at.x) << "\" y=\""
          << num(height_ - at.y) << "\" font-size=\"" << num(std::max(4.0, width_ / 48.0))
          << "\" text-anchor=\"middle\">" << s << "</text>\n";
  }

  std::string str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
       << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  int width_;
  int height_;
  std::ostringstream body_;
};

inline std::string rgb(double r, double g, double b) {
  char buf[16];
  auto c = [](double v) { return static_cast<int>(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5); };
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
  return buf;
}

/// Blue (low) to red (high).
inline std::string heat(double t) { return rgb(t, 0.25, 1.0 - t); }

inline std::string palette(int i) {
  static constexpr std::array<const char*, 12> kColors{
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};
  return kColors[static_cast<std::size_t>(i) % kColors.size()];
}

/// Outline rings of the pixels carrying `id` in `grid`, traced inside `box`.
inline std::vector<Polygon> pixel_rings(const Grid<int32_t>& grid, int32_t id, const Box& box) {
  auto rings = trace_cells(box.width(), box.height(), [&](int x, int y) {
    return grid(x + box.x0, y + box.y0) == id;
  });
  for (Polygon& ring : rings) {
    for (Point& p : ring) p = {p.x + box.x0, p.y + box.y0};
  }
  return rings;
}

namespace detail {

inline Point centroid(const UnitRegion& r, int width) {
  double sx = 0.0, sy = 0.0;
  for (uint32_t i : r.pixels) {
    sx += static_cast<double>(i % width) + 0.5;
    sy += static_cast<double>(i / width) + 0.5;
  }
  const double n = std::max<double>(1.0, static_cast<double>(r.pixels.size()));
  return {sx / n, sy / n};
}

inline std::string label_text(int32_t label, const std::vector<std::string>& names) {
  if (label < 0) return "?";
  if (static_cast<std::size_t>(label) < names.size()) return names[label];
  return "c" + std::to_string(label);
}

inline void outline(SvgCanvas& svg, const Floorplan& plan, const RasterMask& mask) {
  svg.path({mask.transform.apply(plan.vertices)}, "outline",
           "fill:none;stroke:#000000;stroke-width:1.5");
}

}  // namespace detail

/// Floorplan outline over a density heat map (one filled path per density
/// region), unit-region borders (one path with class "region" per unit
/// region) and optional region labels.
inline std::string svg_overlay(const Floorplan& plan, const RasterMask& mask,
                               const DensityRegionSet& density_regions,
                               const UnitRegionPartition& p,
                               const RegionLabels* labels = nullptr,
                               const std::vector<std::string>& class_names = {}) {
  SvgCanvas svg(mask.width(), mask.height());
  Grid<int32_t> dgrid(density_regions.width, density_regions.height, -1);
  uint32_t lo = UINT32_MAX, hi = 0;
  for (const DensityRegion& r : density_regions.regions) {
    for (uint32_t i : r.pixels) dgrid[i] = r.id;
    lo = std::min(lo, r.density_key);
    hi = std::max(hi, r.density_key);
  }
  for (const DensityRegion& r : density_regions.regions) {
    // Smaller sums mean higher density.
    const double t = hi > lo ? double(hi - r.density_key) / double(hi - lo) : 0.5;
    svg.path(pixel_rings(dgrid, r.id, r.bbox), "density",
             "fill:" + heat(t) + ";fill-opacity:0.55;stroke:none");
  }
  for (const UnitRegion& r : p.regions) {
    svg.path(pixel_rings(p.region_id, r.id, r.bbox), "region",
             "fill:none;stroke:#202020;stroke-width:0.5");
  }
  detail::outline(svg, plan, mask);
  if (labels) {
    for (const UnitRegion& r : p.regions) {
      svg.text(detail::centroid(r, p.width()), detail::label_text(labels->labels[r.id], class_names),
               "label");
    }
  }
  return svg.str();
}

/// Unit regions filled by instance color, one room label per instance.
inline std::string svg_instances(const Floorplan& plan, const RasterMask& mask,
                                 const UnitRegionPartition& p, const InstanceGrouping& g,
                                 const std::vector<int32_t>& instance_labels,
                                 const std::vector<std::string>& class_names = {}) {
  SvgCanvas svg(mask.width(), mask.height());
  for (const UnitRegion& r : p.regions) {
    svg.path(pixel_rings(p.region_id, r.id, r.bbox), "instance",
             "fill:" + palette(g.instance_of[r.id]) + ";stroke:#ffffff;stroke-width:0.3");
  }
  detail::outline(svg, plan, mask);
  for (int k = 0; k < g.instance_count; ++k) {
    double sx = 0.0, sy = 0.0, n = 0.0;
    for (const UnitRegion& r : p.regions) {
      if (g.instance_of[r.id] != k) continue;
      const Point c = detail::centroid(r, p.width());
      const double w = static_cast<double>(r.pixels.size());
      sx += c.x * w;
      sy += c.y * w;
      n += w;
    }
    if (n > 0.0 && static_cast<std::size_t>(k) < instance_labels.size()) {
      svg.text({sx / n, sy / n}, detail::label_text(instance_labels[k], class_names), "label");
    }
  }
  return svg.str();
}

}  // namespace floorgrid::io

#endif  // FLOORGRID_IO_SVG_HPP_
