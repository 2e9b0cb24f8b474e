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

#ifndef FLOORGRID_REPORT_HPP_
#define FLOORGRID_REPORT_HPP_

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "floorgrid/density.hpp"
#include "floorgrid/labeling.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/raster.hpp"

namespace floorgrid {

struct CorpusItem {
  std::string name;
  Floorplan plan;
  /// Ground truth on the square raster the report uses.
  LabelMap gt;
};

struct ReportOptions {
  int margin = 0;
  int jobs = 1;
  /// Strategy whose per-plan region count the uniform baseline targets;
  /// defaults to the last strategy.
  std::optional<std::size_t> uniform_match;
};

struct Score {
  double miou = 0.0;
  double pixel_accuracy = 0.0;
  double regions = 0.0;
};

struct PlanEvaluation {
  std::vector<Score> strategies;
  Score pixel;
  Score uniform;
};

/// Partition, vote, expand and score one plan under every strategy, plus the
/// pixel and uniform-grid baselines.
inline PlanEvaluation evaluate_plan(const Floorplan& plan, const LabelMap& gt,
                                    const std::vector<SplitStrategy>& strategies,
                                    const ReportOptions& opt = {}) {
  if (gt.width() != gt.height()) {
    throw Error(ErrorCode::kShapeMismatch, "ground truth must be square");
  }
  const RasterMask mask = rasterize(plan, gt.width(), opt.margin);
  const double mpp = raster_meters_per_pixel(plan, mask.transform);
  const DensityRegionSet regions = merge_sloping(
      cluster_density_regions(density_map(mask)), plan, mask.transform);
  const int classes = gt.class_count();
  auto score = [&](const UnitRegionPartition& p) {
    const auto [region_labels, pred] = vote_labels(p, gt);
    const IouResult r = iou(pred, gt, classes);
    return Score{r.mean, r.pixel_accuracy, static_cast<double>(p.size())};
  };
  PlanEvaluation out;
  for (const SplitStrategy& s : strategies) {
    out.strategies.push_back(score(split_unit_regions(regions, s, mpp)));
  }
  out.pixel = Score{100.0, 100.0, static_cast<double>(mask.interior_count())};
  if (!strategies.empty()) {
    const std::size_t match =
        std::min(opt.uniform_match.value_or(strategies.size() - 1), strategies.size() - 1);
    const int target = static_cast<int>(out.strategies[match].regions);
    out.uniform = score(uniform_partition(mask, target, mpp));
  }
  return out;
}

struct ReportRow {
  std::string strategy;
  std::string grid;
  std::string thresh;
  Score mean;
};

struct Report {
  std::vector<ReportRow> rows;
  std::size_t plans = 0;
  std::size_t skipped = 0;
  std::vector<std::string> errors;
};

inline std::string format_strategy_grid(const SplitStrategy& s) {
  return std::to_string(s.grid_m) + "x" + std::to_string(s.grid_n);
}

inline std::string format_meters(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2gm", v);
  return buf;
}

/// Averages evaluate_plan over the corpus. Plans that fail are skipped and
/// listed in `errors`; the reduction runs in corpus order.
inline Report correlation_report(const std::vector<CorpusItem>& corpus,
                                 const std::vector<SplitStrategy>& strategies,
                                 const ReportOptions& opt = {}) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty corpus");
  }
  std::vector<std::optional<PlanEvaluation>> results(corpus.size());
  std::vector<std::string> errors(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      try {
        results[i] = evaluate_plan(corpus[i].plan, corpus[i].gt, strategies, opt);
      } catch (const std::exception& e) {
        errors[i] = corpus[i].name + ": " + e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(corpus.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Report report;
  std::vector<Score> sums(strategies.size() + 2);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!results[i]) {
      ++report.skipped;
      report.errors.push_back(errors[i]);
      continue;
    }
    ++report.plans;
    const PlanEvaluation& e = *results[i];
    auto add = [](Score& into, const Score& s) {
      into.miou += s.miou;
      into.pixel_accuracy += s.pixel_accuracy;
      into.regions += s.regions;
    };
    for (std::size_t s = 0; s < strategies.size(); ++s) add(sums[s], e.strategies[s]);
    add(sums[strategies.size()], e.pixel);
    add(sums[strategies.size() + 1], e.uniform);
  }
  const double n = report.plans > 0 ? static_cast<double>(report.plans) : 1.0;
  auto mean = [n](Score s) {
    return Score{s.miou / n, s.pixel_accuracy / n, s.regions / n};
  };
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const SplitStrategy& st = strategies[s];
    const bool single = st.grid_m == 1 && st.grid_n == 1;
    report.rows.push_back({single ? "Density Region" : "Unit Region",
                           format_strategy_grid(st), format_meters(st.min_size_m),
                           mean(sums[s])});
  }
  report.rows.push_back({"Pixel-" + std::to_string(corpus.front().gt.width()), "-", "-",
                         mean(sums[strategies.size()])});
  if (!strategies.empty()) {
    report.rows.push_back({"Uniform Partition", "-", "-",
                           mean(sums[strategies.size() + 1])});
  }
  return report;
}

inline std::string report_csv(const Report& r) {
  std::ostringstream os;
  os << "strategy,grid,thresh,miou,pixel_accuracy,avg_num\n";
  char buf[96];
  for (const ReportRow& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%.4f,%.4f,%.2f", row.mean.miou,
                  row.mean.pixel_accuracy, row.mean.regions);
    os << row.strategy << ',' << row.grid << ',' << row.thresh << ',' << buf << '\n';
  }
  return os.str();
}

/// Aligned text table with the columns Strategy, Grid, Thresh, IoU, Avg. Num.
inline std::string report_table(const Report& r) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %-6s %-7s %8s %8s %10s\n", "Strategy", "Grid",
                "Thresh", "IoU", "PixAcc", "Avg. Num");
  os << buf;
  for (const ReportRow& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%-20s %-6s %-7s %8.2f %8.2f %10.2f\n",
                  row.strategy.c_str(), row.grid.c_str(), row.thresh.c_str(),
                  row.mean.miou, row.mean.pixel_accuracy, row.mean.regions);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "plans: %zu  skipped: %zu\n", r.plans, r.skipped);
  os << buf;
  return os.str();
}

}  // namespace floorgrid

#endif  // FLOORGRID_REPORT_HPP_
