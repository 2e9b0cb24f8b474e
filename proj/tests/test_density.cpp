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

#include <set>

#include "floorgrid/density.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/raster.hpp"
#include "floorgrid/synth.hpp"
#include "oracles.hpp"

namespace floorgrid {
namespace {

RasterMask notch_mask() {
  const Floorplan plan = squeeze(make_rectangle(16, 16), {Side::kNorth, 10, 16, 6});
  return rasterize_with(plan, {}, 16, 16);
}

RasterMask random_mask(uint64_t seed, int resolution) {
  SeededRng rng(seed);
  const int ops = static_cast<int>(rng.below(7));
  return rasterize(synth_floorplan(seed, ops, 64), resolution, 0);
}

std::set<uint32_t> distinct_interior(const Grid<uint32_t>& g) {
  std::set<uint32_t> out;
  for (uint32_t v : g.cells()) {
    if (v != 0) out.insert(v);
  }
  return out;
}

TEST(RunLengthTest, FullRectangle) {
  const RasterMask m = rasterize_with(make_rectangle(7, 5), {}, 9, 6);
  const RunLengths r = directional_run_lengths(m);
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 9; ++x) {
      EXPECT_EQ(r.x(x, y), m.interior(x, y) ? 7u : 0u);
      EXPECT_EQ(r.y(x, y), m.interior(x, y) ? 5u : 0u);
    }
  }
}

TEST(RunLengthTest, Corridor) {
  RasterMask m;
  m.cells = Grid<uint8_t>(11, 3, kExterior);
  for (int x = 1; x <= 9; ++x) m.cells(x, 1) = kInterior;
  const RunLengths r = directional_run_lengths(m);
  for (int x = 1; x <= 9; ++x) {
    EXPECT_EQ(r.x(x, 1), 9u);
    EXPECT_EQ(r.y(x, 1), 1u);
  }
}

TEST(RunLengthTest, EmptyInteriorThrows) {
  RasterMask m;
  m.cells = Grid<uint8_t>(4, 4, kExterior);
  try {
    directional_run_lengths(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInterior);
  }
  EXPECT_THROW(density_map(m), Error);
  EXPECT_THROW(axis_density_maps(m), Error);
}

TEST(DensityTest, BaseSquareIsUniform) {
  const RasterMask m = rasterize(make_rectangle(64, 64), 70, 3);
  const DensityMap d = density_map(m);
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (m.interior(i)) {
      EXPECT_EQ(d.values[i], 1.0 / 128.0);
      EXPECT_EQ(d.raw_sums[i], 128u);
    } else {
      EXPECT_EQ(d.values[i], 0.0);
    }
  }
}

TEST(DensityTest, NotchFixtureHasThreeZones) {
  const DensityMap d = density_map(notch_mask());
  EXPECT_EQ(d.raw_sums(0, 0), 32u);
  EXPECT_EQ(d.raw_sums(9, 9), 32u);
  EXPECT_EQ(d.raw_sums(12, 2), 26u);
  EXPECT_EQ(d.raw_sums(2, 12), 26u);
  EXPECT_EQ(d.raw_sums(12, 12), 0u);
  EXPECT_EQ(distinct_interior(d.raw_sums), (std::set<uint32_t>{26, 32}));
  EXPECT_EQ(oracle::count_components(d.raw_sums), 3);
  EXPECT_EQ(d.raw_sums, oracle::brute_force_raw_sums(notch_mask()));
}

TEST(DensityTest, MatchesOracleOnRandomPlans) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    const RasterMask m = random_mask(seed, 128);
    const DensityMap d = density_map(m);
    ASSERT_EQ(d.raw_sums, oracle::brute_force_raw_sums(m)) << "seed " << seed;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      if (m.interior(i)) {
        ASSERT_GE(d.raw_sums[i], 2u);
        ASSERT_EQ(d.values[i], 1.0 / d.raw_sums[i]);
      } else {
        ASSERT_EQ(d.values[i], 0.0);
      }
    }
  }
}

TEST(AxisDensityTest, SquareAndLShape) {
  const AxisDensityMaps sq = axis_density_maps(rasterize(make_rectangle(64, 64), 64));
  EXPECT_EQ(distinct_interior(sq.x.raw_sums), std::set<uint32_t>{64});
  EXPECT_EQ(distinct_interior(sq.y.raw_sums), std::set<uint32_t>{64});

  const RasterMask m = notch_mask();
  const AxisDensityMaps l = axis_density_maps(m);
  EXPECT_EQ(distinct_interior(l.x.raw_sums), (std::set<uint32_t>{10, 16}));
  EXPECT_EQ(distinct_interior(l.y.raw_sums), (std::set<uint32_t>{10, 16}));
  const DensityMap d = density_map(m);
  for (std::size_t i = 0; i < d.raw_sums.size(); ++i) {
    EXPECT_EQ(l.x.raw_sums[i] + l.y.raw_sums[i], d.raw_sums[i]);
    EXPECT_EQ(l.x.values[i], static_cast<double>(l.x.raw_sums[i]));
  }
}

TEST(DensityTest, SqueezeOnlyCrowds) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    SeededRng rng(seed * 977);
    const Floorplan before = synth_floorplan(seed, 2, 32);
    const SqueezeOp op = random_squeeze(rng, 32, 32);
    Floorplan after;
    try {
      after = squeeze(before, op);
    } catch (const Error&) {
      continue;
    }
    const RasterMask m0 = rasterize_with(before, {}, 32, 32);
    const RasterMask m1 = rasterize_with(after, {}, 32, 32);
    const DensityMap d0 = density_map(m0);
    const DensityMap d1 = density_map(m1);
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) {
        if (!m1.interior(x, y)) continue;
        ASSERT_LE(d1.raw_sums(x, y), d0.raw_sums(x, y));
        // Does either run through (x, y) before the squeeze lose a pixel?
        bool touched = false;
        for (int dir = 0; dir < 4 && !touched; ++dir) {
          const int dx[4] = {1, -1, 0, 0};
          const int dy[4] = {0, 0, 1, -1};
          int cx = x, cy = y;
          while (m0.cells.in_bounds(cx, cy) && m0.interior(cx, cy)) {
            if (!m1.interior(cx, cy)) touched = true;
            cx += dx[dir];
            cy += dy[dir];
          }
        }
        if (!touched) {
          ASSERT_EQ(d1.raw_sums(x, y), d0.raw_sums(x, y));
        }
      }
    }
  }
}

TEST(NormalizeTest, UniformSquareHasOnlyABoundaryBand) {
  const RasterMask m = rasterize(make_rectangle(16, 16), 20, 2);
  const NormalizedDensityMap n = normalize_density(density_map(m));
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      if (!m.interior(x, y)) {
        EXPECT_EQ(n.values(x, y), 0.0);
        continue;
      }
      const bool band = x == 2 || x == 17 || y == 2 || y == 17;
      EXPECT_EQ(n.values(x, y) > 0.0, band) << x << "," << y;
    }
  }
}

TEST(NormalizeTest, RangeOnRandomPlans) {
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const RasterMask m = random_mask(seed, 64);
    const NormalizedDensityMap n = normalize_density(density_map(m));
    for (std::size_t i = 0; i < n.values.size(); ++i) {
      ASSERT_GE(n.values[i], 0.0);
      ASSERT_LE(n.values[i], 1.0);
      if (!m.interior(i)) {
        ASSERT_EQ(n.values[i], 0.0);
      }
    }
  }
}

TEST(NormalizeTest, LShapeRidgesFollowRegionBorders) {
  const RasterMask m = rasterize(squeeze(make_rectangle(16, 16), {Side::kNorth, 10, 16, 6}), 64);
  const DensityMap d = density_map(m);
  const NormalizedDensityMap n = normalize_density(d);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      if (!m.interior(x, y)) continue;
      bool varies = false;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const uint32_t v = d.raw_sums.in_bounds(x + dx, y + dy) ? d.raw_sums(x + dx, y + dy) : 0;
          varies = varies || v != d.raw_sums(x, y);
        }
      }
      EXPECT_EQ(n.values(x, y) > 0.0, varies) << x << "," << y;
    }
  }
}

}  // namespace
}  // namespace floorgrid
