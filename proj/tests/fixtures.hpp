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

// Shared fixtures for the unit and acceptance tests.

#ifndef FLOORGRID_TESTS_FIXTURES_HPP_
#define FLOORGRID_TESTS_FIXTURES_HPP_

#include <optional>

#include "floorgrid/floorplan.hpp"
#include "floorgrid/synth.hpp"

namespace floorgrid::fixture {

/// 16 x 16 square with a 6 x 6 notch cut from its north-east corner.
inline Floorplan notch_plan() {
  return squeeze(make_rectangle(16, 16), {Side::kNorth, 10, 16, 6});
}

/// Moves one outline edge that is not on the bounding box by one unit along
/// its normal. Returns nothing when no such edge keeps the plan valid.
inline std::optional<Floorplan> jitter(const Floorplan& plan, SeededRng& rng) {
  const Bounds b = bounds(plan.vertices);
  const std::size_t n = plan.vertices.size();
  const std::size_t first = rng.below(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t e = (first + k) % n;
    const std::size_t f = (e + 1) % n;
    const Point a = plan.vertices[e], c = plan.vertices[f];
    const bool vertical = a.x == c.x;
    const double pos = vertical ? a.x : a.y;
    if (pos == (vertical ? b.min_x : b.min_y) || pos == (vertical ? b.max_x : b.max_y)) continue;
    for (double step : {1.0, -1.0}) {
      Floorplan out = plan;
      out.rooms.clear();
      out.openings.clear();
      if (vertical) {
        out.vertices[e].x += step;
        out.vertices[f].x += step;
      } else {
        out.vertices[e].y += step;
        out.vertices[f].y += step;
      }
      if (validate(out).empty()) return out;
    }
  }
  return std::nullopt;
}

struct Triplet {
  Floorplan anchor;
  Floorplan positive;
  Floorplan negative;
};

/// Anchor and positive are the same synthetic plan up to a one-unit edge
/// jitter; the negative is a plan from another seed.
inline std::vector<Triplet> toy_triplets(std::size_t count, uint64_t seed) {
  std::vector<Triplet> out;
  SeededRng rng(seed);
  for (uint64_t s = seed * 1000 + 1; out.size() < count; s += 2) {
    const Floorplan a = synth_floorplan(s, 4, 64);
    auto p = jitter(a, rng);
    if (!p) continue;
    Floorplan anchor = a;
    anchor.rooms.clear();
    anchor.openings.clear();
    Floorplan negative = synth_floorplan(s + 1, 4, 64);
    negative.rooms.clear();
    negative.openings.clear();
    out.push_back({std::move(anchor), std::move(*p), std::move(negative)});
  }
  return out;
}

}  // namespace floorgrid::fixture

#endif  // FLOORGRID_TESTS_FIXTURES_HPP_
