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

#include <map>
#include <set>

#include "floorgrid/density.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/synth.hpp"
#include "oracles.hpp"

namespace floorgrid {
namespace {

Floorplan notch_plan() { return squeeze(make_rectangle(16, 16), {Side::kNorth, 10, 16, 6}); }

RasterMask unit_mask(const Floorplan& plan) {
  const Bounds b = bounds(plan.vertices);
  return rasterize_with(plan, {}, static_cast<int>(b.max_x), static_cast<int>(b.max_y));
}

DensityRegionSet regions_of(const RasterMask& m) {
  return cluster_density_regions(density_map(m));
}

Floorplan random_plan(uint64_t seed) {
  SeededRng rng(seed);
  return synth_floorplan(seed, 1 + static_cast<int>(rng.below(6)), 64);
}

void expect_tiles(const UnitRegionPartition& p, const RasterMask& m) {
  std::size_t covered = 0;
  for (std::size_t i = 0; i < p.region_id.size(); ++i) {
    if (m.interior(i)) {
      ASSERT_GE(p.region_id[i], 0);
      ++covered;
    } else {
      ASSERT_EQ(p.region_id[i], -1);
    }
  }
  std::size_t total = 0;
  for (std::size_t r = 0; r < p.regions.size(); ++r) {
    ASSERT_EQ(p.regions[r].id, static_cast<int>(r));
    ASSERT_FALSE(p.regions[r].pixels.empty());
    for (uint32_t i : p.regions[r].pixels) ASSERT_EQ(p.region_id[i], static_cast<int32_t>(r));
    total += p.regions[r].pixels.size();
  }
  EXPECT_EQ(total, covered);
}

TEST(ClusterTest, BaseSquareIsOneRegion) {
  const DensityRegionSet s = regions_of(rasterize(make_rectangle(64, 64), 64));
  ASSERT_EQ(s.regions.size(), 1u);
  EXPECT_EQ(s.regions[0].pixels.size(), 64u * 64u);
  EXPECT_EQ(s.regions[0].density_key, 128u);
}

TEST(ClusterTest, NotchGivesThreeRegionsInScanOrder) {
  const DensityRegionSet s = regions_of(unit_mask(notch_plan()));
  ASSERT_EQ(s.regions.size(), 3u);
  EXPECT_EQ(s.regions[0].density_key, 32u);
  EXPECT_EQ(s.regions[1].density_key, 26u);
  EXPECT_EQ(s.regions[2].density_key, 26u);
  EXPECT_EQ(s.regions[0].bbox, (Box{0, 0, 10, 10}));
  EXPECT_EQ(s.regions[1].bbox, (Box{10, 0, 16, 10}));
  EXPECT_EQ(s.regions[2].bbox, (Box{0, 10, 10, 16}));
}

TEST(ClusterTest, OppositeSqueezesMatchFloodFillOracle) {
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    SeededRng rng(seed);
    Floorplan plan = make_rectangle(48, 48);
    const int a = 1 + static_cast<int>(rng.below(40));
    const int b = 1 + static_cast<int>(rng.below(40));
    plan = squeeze(plan, {Side::kNorth, a, std::min(48, a + 6), 1 + static_cast<int>(rng.below(20))});
    try {
      plan = squeeze(plan, {Side::kSouth, b, std::min(48, b + 9), 1 + static_cast<int>(rng.below(20))});
    } catch (const Error&) {
    }
    const RasterMask m = unit_mask(plan);
    const DensityRegionSet s = regions_of(m);
    EXPECT_EQ(static_cast<int>(s.regions.size()),
              oracle::count_components(oracle::brute_force_raw_sums(m)))
        << "seed " << seed;
  }
}

TEST(ClusterTest, RegionsTileAndAreConnected) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const RasterMask m = rasterize(random_plan(seed), 128);
    const DensityMap d = density_map(m);
    const DensityRegionSet s = cluster_density_regions(d);
    Grid<uint32_t> single(m.width(), m.height(), 0);
    std::size_t total = 0;
    for (const DensityRegion& r : s.regions) {
      for (uint32_t i : r.pixels) {
        ASSERT_EQ(d.raw_sums[i], r.density_key);
        ASSERT_EQ(single[i], 0u);
        single[i] = 1;
      }
      total += r.pixels.size();
      Grid<uint32_t> one(m.width(), m.height(), 0);
      for (uint32_t i : r.pixels) one[i] = 1;
      ASSERT_EQ(oracle::count_components(one), 1);
    }
    EXPECT_EQ(total, m.interior_count());
  }
}

// Pentagon with a 45 degree wall from (16, 8) to (8, 16). Every column and
// row crossing the slope has its own run length, so the staircase breaks the
// area near the wall into many bands.
Floorplan pentagon() {
  Floorplan plan;
  plan.vertices = {{0, 0}, {16, 0}, {16, 8}, {8, 16}, {0, 16}};
  plan.edge_flags = {EdgeFlag::kAxisAligned, EdgeFlag::kAxisAligned, EdgeFlag::kSloping,
                     EdgeFlag::kAxisAligned, EdgeFlag::kAxisAligned};
  return plan;
}

TEST(MergeSlopingTest, IdentityWithoutSlopingEdges) {
  const Floorplan plan = notch_plan();
  const DensityRegionSet s = regions_of(unit_mask(plan));
  EXPECT_EQ(merge_sloping(s, plan, {}), s);
}

TEST(MergeSlopingTest, BandsAlongTheSlopeMerge) {
  const Floorplan plan = pentagon();
  const RasterMask m = unit_mask(plan);
  const DensityRegionSet before = regions_of(m);
  // Regions with a pixel center within one pixel of the sloping wall.
  std::set<int> touching;
  for (const DensityRegion& r : before.regions) {
    for (uint32_t i : r.pixels) {
      const Point c{i % 16 + 0.5, i / 16 + 0.5};
      if (distance_to_segment(c, {16, 8}, {8, 16}) <= 1.0) touching.insert(r.id);
    }
  }
  ASSERT_GE(touching.size(), 3u);
  const DensityRegionSet after = merge_sloping(before, plan, {});
  EXPECT_EQ(after.regions.size(), before.regions.size() - touching.size() + 1);
  int merged = 0;
  std::size_t total = 0;
  for (const DensityRegion& r : after.regions) {
    total += r.pixels.size();
    if (r.merged) {
      ++merged;
      std::size_t expected = 0;
      for (int t : touching) expected += before.regions[t].pixels.size();
      EXPECT_EQ(r.pixels.size(), expected);
    }
  }
  EXPECT_EQ(merged, 1);
  EXPECT_EQ(total, m.interior_count());
  EXPECT_EQ(merge_sloping(after, plan, {}), after);
}

TEST(MergeSlopingTest, UntouchedRegionsKeepTheirPixels) {
  const Floorplan plan = pentagon();
  const DensityRegionSet before = regions_of(unit_mask(plan));
  const DensityRegionSet after = merge_sloping(before, plan, {});
  std::set<std::vector<uint32_t>> old_sets;
  for (const DensityRegion& r : before.regions) old_sets.insert(r.pixels);
  for (const DensityRegion& r : after.regions) {
    if (!r.merged) {
      EXPECT_TRUE(old_sets.count(r.pixels));
    }
  }
}

TEST(SplitTest, OneByOneReproducesDensityRegions) {
  const RasterMask m = unit_mask(notch_plan());
  const DensityRegionSet s = regions_of(m);
  const UnitRegionPartition p = split_unit_regions(s, {1, 1, 1.0}, 1.0);
  ASSERT_EQ(p.size(), s.regions.size());
  for (std::size_t r = 0; r < p.size(); ++r) {
    EXPECT_EQ(p.regions[r].pixels, s.regions[r].pixels);
    EXPECT_EQ(p.regions[r].parent, s.regions[r].id);
  }
  expect_tiles(p, m);
}

TEST(SplitTest, FallbackReducesTheGrid) {
  // 16 x 10 pixels at 0.25 m/px is 4.0 m x 2.5 m.
  const RasterMask m = unit_mask(make_rectangle(16, 10));
  const UnitRegionPartition p = split_unit_regions(regions_of(m), {4, 4, 1.0}, 0.25);
  ASSERT_EQ(p.size(), 8u);
  std::set<std::pair<int, int>> cells;
  for (const UnitRegion& r : p.regions) {
    cells.insert({r.cell_i, r.cell_j});
    EXPECT_EQ(r.cell.width(), 4);
    EXPECT_EQ(r.cell.height(), 5);
  }
  EXPECT_EQ(cells.size(), 8u);
  expect_tiles(p, m);
}

TEST(SplitTest, RemainderGoesToLeadingCells) {
  EXPECT_EQ(detail::cut_cells(10, 4), (std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 3, 3}));
  EXPECT_EQ(detail::cut_box({0, 0, 10, 7}, 4, 2, 0, 0), (Box{0, 0, 3, 4}));
  EXPECT_EQ(detail::cut_box({0, 0, 10, 7}, 4, 2, 3, 1), (Box{8, 4, 10, 7}));
}

TEST(SplitTest, TwoByTwoOnBaseSquareIsCongruent) {
  const RasterMask m = rasterize(make_rectangle(64, 64), 64);
  const UnitRegionPartition p = split_unit_regions(regions_of(m), {2, 2, 0.01}, 1.0);
  ASSERT_EQ(p.size(), 4u);
  for (const UnitRegion& r : p.regions) {
    EXPECT_EQ(r.pixels.size(), 32u * 32u);
    EXPECT_EQ(r.bbox.width(), 32);
    EXPECT_EQ(r.bbox.height(), 32);
  }
}

TEST(SplitTest, CellsRespectMinimumSizeAndStayInParent) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const Floorplan plan = random_plan(seed);
    const RasterMask m = rasterize(plan, 128);
    const double mpp = raster_meters_per_pixel(plan, m.transform);
    const DensityRegionSet s = regions_of(m);
    const SplitStrategy strat{8, 8, 1.0};
    const UnitRegionPartition p = split_unit_regions(s, strat, mpp);
    expect_tiles(p, m);
    std::map<int, std::vector<const UnitRegion*>> by_parent;
    for (const UnitRegion& r : p.regions) by_parent[r.parent].push_back(&r);
    for (const auto& [parent, units] : by_parent) {
      const DensityRegion& dr = s.regions[parent];
      std::set<uint32_t> parent_pixels(dr.pixels.begin(), dr.pixels.end());
      int cols = 1, rows = 1;
      for (const UnitRegion* u : units) {
        for (uint32_t i : u->pixels) ASSERT_TRUE(parent_pixels.count(i));
        cols = std::max(cols, u->cell_i + 1);
        rows = std::max(rows, u->cell_j + 1);
        ASSERT_TRUE(dr.bbox.contains(u->cell.x0, u->cell.y0));
        for (const UnitRegion* v : units) {
          if (u == v) continue;
          const bool disjoint = u->cell.x1 <= v->cell.x0 || v->cell.x1 <= u->cell.x0 ||
                                u->cell.y1 <= v->cell.y0 || v->cell.y1 <= u->cell.y0;
          ASSERT_TRUE(disjoint);
        }
      }
      // Cells are at least h wide unless the grid already fell back to one.
      const double cw = dr.bbox.width() * mpp / cols;
      const double ch = dr.bbox.height() * mpp / rows;
      if (cols > 1) {
        EXPECT_GE(cw + 1e-9, strat.min_size_m);
      }
      if (rows > 1) {
        EXPECT_GE(ch + 1e-9, strat.min_size_m);
      }
    }
  }
}

TEST(SplitTest, Deterministic) {
  const Floorplan plan = random_plan(5);
  const RasterMask m = rasterize(plan, 128);
  EXPECT_EQ(partition_plan(plan, m, {4, 4, 1.0}), partition_plan(plan, m, {4, 4, 1.0}));
}

TEST(SplitTest, RejectsBadStrategy) {
  const DensityRegionSet s = regions_of(rasterize(make_rectangle(8, 8), 8));
  EXPECT_THROW(split_unit_regions(s, {0, 1, 1.0}, 1.0), Error);
  EXPECT_THROW(split_unit_regions(s, {1, 1, 0.0}, 1.0), Error);
  EXPECT_THROW(split_unit_regions(s, {1, 1, 1.0}, 0.0), Error);
}

TEST(RefineTest, FactorOneIsIdentity) {
  const RasterMask m = rasterize(notch_plan(), 64);
  const UnitRegionPartition p = split_unit_regions(regions_of(m), {2, 2, 0.5}, 0.25);
  EXPECT_EQ(refine(p, 1), p);
  EXPECT_THROW(refine(p, 0), Error);
}

TEST(RefineTest, BaseSquareTwoByTwoBecomesSixteen) {
  const RasterMask m = rasterize(make_rectangle(64, 64), 64);
  const UnitRegionPartition p = split_unit_regions(regions_of(m), {2, 2, 0.01}, 1.0);
  const UnitRegionPartition r = refine(p, 2);
  ASSERT_EQ(r.size(), 16u);
  for (const UnitRegion& u : r.regions) EXPECT_EQ(u.pixels.size(), 16u * 16u);
}

TEST(RefineTest, SubsetPropertyOnRandomPlans) {
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const Floorplan plan = random_plan(seed);
    const RasterMask m = rasterize(plan, 64);
    const UnitRegionPartition p = partition_plan(plan, m, {4, 4, 1.0});
    const int factor = 2 + static_cast<int>(seed % 3);
    const UnitRegionPartition r = refine(p, factor);
    expect_tiles(r, m);
    ASSERT_GE(r.size(), p.size());
    for (const UnitRegion& u : r.regions) {
      const int32_t owner = p.region_id[u.pixels.front()];
      for (uint32_t i : u.pixels) ASSERT_EQ(p.region_id[i], owner) << "seed " << seed;
    }
  }
}

TEST(UniformTest, FullSquareTargetFour) {
  const RasterMask m = rasterize(make_rectangle(64, 64), 64);
  const UnitRegionPartition p = uniform_partition(m, 4);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.strategy.grid_m, 2);
  expect_tiles(p, m);
}

TEST(UniformTest, LShapeCellsStraddleDensityBorders) {
  const RasterMask m = rasterize(notch_plan(), 64);
  const UnitRegionPartition u = uniform_partition(m, 14);
  EXPECT_EQ(u.strategy.grid_m, 4);
  const DensityRegionSet s = regions_of(m);
  Grid<int32_t> parent(64, 64, -1);
  for (const DensityRegion& r : s.regions) {
    for (uint32_t i : r.pixels) parent[i] = r.id;
  }
  int straddling = 0;
  for (const UnitRegion& r : u.regions) {
    std::set<int32_t> parents;
    for (uint32_t i : r.pixels) parents.insert(parent[i]);
    if (parents.size() > 1) ++straddling;
  }
  EXPECT_GT(straddling, 0);
}

TEST(UniformTest, CountTracksTarget) {
  int within = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const Floorplan plan = random_plan(seed);
    const RasterMask m = rasterize(plan, 128);
    const int target = static_cast<int>(partition_plan(plan, m, {8, 8, 1.0}).size());
    const UnitRegionPartition u = uniform_partition(m, target);
    expect_tiles(u, m);
    if (std::abs(static_cast<double>(u.size()) - target) <= 0.15 * target) ++within;
  }
  EXPECT_EQ(within, 100);
}

TEST(StatsTest, Counts) {
  EXPECT_EQ(partition_stats(split_unit_regions(regions_of(rasterize(make_rectangle(8, 8), 8)),
                                               {1, 1, 1.0}, 1.0))
                .region_count,
            1u);
  const PartitionStats st =
      partition_stats(split_unit_regions(regions_of(unit_mask(notch_plan())), {1, 1, 1.0}, 0.5));
  EXPECT_EQ(st.region_count, 3u);
  EXPECT_DOUBLE_EQ(st.min_area_m2, 60 * 0.25);
  EXPECT_DOUBLE_EQ(st.max_area_m2, 100 * 0.25);
  EXPECT_DOUBLE_EQ(st.mean_area_m2, 220 * 0.25 / 3);
  EXPECT_EQ(st.misaligned_cut_ends, 0u);
}

TEST(StatsTest, MisalignedCutsAreCounted) {
  // With one corner notch every pair of neighbouring regions has the same
  // extent along their shared border, so the cuts line up.
  const DensityRegionSet s = regions_of(unit_mask(notch_plan()));
  EXPECT_EQ(partition_stats(split_unit_regions(s, {2, 2, 0.1}, 1.0)).misaligned_cut_ends, 0u);
  // The region merged along the pentagon's slope spans many narrow bands,
  // so its cuts cannot line up with theirs.
  const Floorplan slope = pentagon();
  const DensityRegionSet t = merge_sloping(regions_of(unit_mask(slope)), slope, {});
  EXPECT_GT(partition_stats(split_unit_regions(t, {2, 2, 0.1}, 1.0)).misaligned_cut_ends, 0u);
}

}  // namespace
}  // namespace floorgrid
