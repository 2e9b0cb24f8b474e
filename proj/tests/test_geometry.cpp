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

#include <gtest/gtest.h>

#include "floorgrid/geometry.hpp"
#include "floorgrid/grid.hpp"

namespace floorgrid {
namespace {

TEST(GridTest, RowZeroIsSouthAndIndexIsRowMajor) {
  Grid<int> g(3, 2, 0);
  g(2, 1) = 7;
  EXPECT_EQ(g.index(2, 1), 5u);
  EXPECT_EQ(g[5], 7);
  EXPECT_FALSE(g.in_bounds(3, 0));
  EXPECT_FALSE(g.in_bounds(0, -1));
}

TEST(GeometryTest, AreaAndOrientation) {
  const Polygon ccw{{0, 0}, {4, 0}, {4, 3}, {0, 3}};
  EXPECT_DOUBLE_EQ(signed_area(ccw), 12.0);
  const Polygon cw(ccw.rbegin(), ccw.rend());
  EXPECT_DOUBLE_EQ(signed_area(cw), -12.0);
}

TEST(GeometryTest, BoundaryProbesBelongToWestAndSouthRegion) {
  // A unit square [0,1]^2 with the probe exactly on its edges.
  const Polygon sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_TRUE(point_in_polygon({0.5, 0.5}, sq));
  // The region lying west or south of the edge owns the probe.
  EXPECT_TRUE(point_in_polygon({1.0, 0.5}, sq));
  EXPECT_TRUE(point_in_polygon({0.5, 1.0}, sq));
  EXPECT_FALSE(point_in_polygon({0.0, 0.5}, sq));
  EXPECT_FALSE(point_in_polygon({0.5, 0.0}, sq));
}

TEST(GeometryTest, ScanPolygonMatchesPointInPolygon) {
  const Polygon tri{{0.3, 0.2}, {9.7, 1.4}, {4.1, 8.9}};
  Grid<int> scanned(10, 10, 0);
  scan_polygon(tri, 10, 10, [&](int x, int y) { ++scanned(x, y); });
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      EXPECT_EQ(scanned(x, y), point_in_polygon({x + 0.5, y + 0.5}, tri) ? 1 : 0)
          << x << "," << y;
    }
  }
}

TEST(GeometryTest, SimplePolygons) {
  EXPECT_TRUE(is_simple({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
  EXPECT_FALSE(is_simple({{0, 0}, {4, 4}, {4, 0}, {0, 4}}));
  EXPECT_FALSE(is_simple({{0, 0}, {4, 0}}));
}

TEST(GeometryTest, MergeCollinearAndCanonicalStart) {
  const Polygon p{{2, 0}, {4, 0}, {4, 4}, {0, 4}, {0, 0}};
  const Polygon merged = canonical_start(merge_collinear(p));
  const Polygon expected{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  EXPECT_EQ(merged, expected);
}

TEST(GeometryTest, TraceCellsOuterRingIsCounterClockwise) {
  // Plus sign.
  const char* rows[] = {".#.", "###", ".#."};
  auto rings = trace_cells(3, 3, [&](int x, int y) { return rows[2 - y][x] == '#'; });
  ASSERT_EQ(rings.size(), 1u);
  EXPECT_EQ(rings[0].size(), 12u);
  EXPECT_DOUBLE_EQ(signed_area(rings[0]), 5.0);
}

TEST(GeometryTest, TraceCellsHoleIsClockwise) {
  auto rings = trace_cells(3, 3, [](int x, int y) { return !(x == 1 && y == 1); });
  ASSERT_EQ(rings.size(), 2u);
  double total = 0.0;
  for (const Polygon& r : rings) total += signed_area(r);
  EXPECT_DOUBLE_EQ(total, 8.0);
}

TEST(GeometryTest, DistanceToSegment) {
  EXPECT_DOUBLE_EQ(distance_to_segment({0, 1}, {-1, 0}, {1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_segment({3, 4}, {0, 0}, {0, 0}), 5.0);
  EXPECT_DOUBLE_EQ(distance_to_segment({4, 0}, {0, 0}, {1, 0}), 3.0);
}

}  // namespace
}  // namespace floorgrid
