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

#ifndef FLOORGRID_COMMANDS_HPP_
#define FLOORGRID_COMMANDS_HPP_

// Library side of the floorgrid command line: every verb is a function
// writing its artifacts under an output directory, so tests and the CLI share
// one code path.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "floorgrid/density.hpp"
#include "floorgrid/encoding.hpp"
#include "floorgrid/error.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/io/csv.hpp"
#include "floorgrid/io/fgrd.hpp"
#include "floorgrid/io/json_io.hpp"
#include "floorgrid/io/pgm.hpp"
#include "floorgrid/io/svg.hpp"
#include "floorgrid/labeling.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/raster.hpp"
#include "floorgrid/report.hpp"
#include "floorgrid/synth.hpp"

namespace floorgrid {

namespace fs = std::filesystem;

struct PipelineConfig {
  int resolution = 256;
  int margin = 0;
  std::vector<SplitStrategy> strategies;
  int tol_px = 1;
  uint64_t seed = 0;
  std::string out = ".";
  int jobs = 1;

  /// First configured strategy, or (4x4, 1m).
  SplitStrategy primary_strategy() const {
    return strategies.empty() ? SplitStrategy{4, 4, 1.0} : strategies.front();
  }
};

inline void check(const PipelineConfig& c) {
  if (c.resolution < 16) throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 16");
  if (c.tol_px < 0) throw Error(ErrorCode::kInvalidArgument, "tol-px must be >= 0");
  if (c.jobs < 1) throw Error(ErrorCode::kInvalidArgument, "jobs must be >= 1");
  for (const SplitStrategy& s : c.strategies) check(s);
}

/// Parses "MxN:h", e.g. "8x8:1.0".
inline SplitStrategy parse_strategy(const std::string& text) {
  SplitStrategy s;
  char x = 0, colon = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d%c%d%c%lf%c", &s.grid_m, &x, &s.grid_n, &colon,
                  &s.min_size_m, &tail) != 5 ||
      (x != 'x' && x != 'X') || colon != ':') {
    throw Error(ErrorCode::kInvalidArgument, "strategy '" + text + "': expected MxN:h");
  }
  check(s);
  return s;
}

inline std::string format_strategy(const SplitStrategy& s) {
  return format_strategy_grid(s) + ":" + io::SvgCanvas::num(s.min_size_m);
}

/// Config file keys mirror the flags: resolution, margin, strategies
/// (list of "MxN:h"), tol_px, seed, out, jobs, tie_rule ("lowest" only).
inline PipelineConfig config_from_json(const io::json& j, PipelineConfig base = {}) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "config: expected an object");
  try {
    if (j.contains("resolution")) base.resolution = j["resolution"].get<int>();
    if (j.contains("margin")) base.margin = j["margin"].get<int>();
    if (j.contains("tol_px")) base.tol_px = j["tol_px"].get<int>();
    if (j.contains("seed")) base.seed = j["seed"].get<uint64_t>();
    if (j.contains("out")) base.out = j["out"].get<std::string>();
    if (j.contains("jobs")) base.jobs = j["jobs"].get<int>();
    if (j.contains("strategies")) {
      base.strategies.clear();
      for (const auto& s : j["strategies"]) base.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    if (j.contains("tie_rule") && j["tie_rule"].get<std::string>() != "lowest") {
      throw Error(ErrorCode::kFormat, "config.tie_rule: only \"lowest\" is supported");
    }
  } catch (const io::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("config: ") + e.what());
  }
  return base;
}

/// FLOORGRID_JOBS when set to a positive integer, else 1.
inline int default_jobs() {
  if (const char* env = std::getenv("FLOORGRID_JOBS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

namespace detail {

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::kIo, "cannot create directory " + dir);
}

inline std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::string& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::kIo, e);
  }
}

inline io::json score_json(const BoundaryScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f", s.f}};
}

}  // namespace detail

inline const std::vector<std::string>& default_class_names() {
  static const std::vector<std::string> kNames{"living",  "bedroom", "kitchen", "bathroom",
                                               "dining",  "study",   "storage", "balcony"};
  return kNames;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  uint64_t seed = 0;
  int count = 1;
  int n_ops = 4;
  int size = 64;
  /// Shift applied to the written ground-truth label maps; 0 keeps them
  /// aligned with the density regions.
  int perturb_px = 0;
};

inline std::string plan_stem(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "plan_%05d", i);
  return buf;
}

/// Writes plan_NNNNN.json, plan_NNNNN.gt.fgrd (i32 labels at the configured
/// resolution) and manifest.json. Plan i uses seed + i.
inline void cmd_synth(const SynthArgs& args, const PipelineConfig& cfg) {
  check(cfg);
  if (args.count < 0) throw Error(ErrorCode::kInvalidArgument, "count must be >= 0");
  detail::ensure_dir(cfg.out);
  detail::parallel_for(static_cast<std::size_t>(args.count), cfg.jobs, [&](std::size_t i) {
    const Floorplan plan = synth_floorplan(args.seed + i, args.n_ops, args.size);
    const std::string stem = plan_stem(static_cast<int>(i));
    io::save_floorplan(detail::join(cfg.out, stem + ".json"), plan);
    const RasterMask mask = rasterize(plan, cfg.resolution, cfg.margin);
    LabelMap gt = room_label_map(plan, mask);
    if (args.perturb_px != 0) gt = perturb_labels(gt, args.perturb_px);
    io::save_grid(detail::join(cfg.out, stem + ".gt.fgrd"), gt.labels);
  });
  io::json manifest;
  manifest["seed"] = args.seed;
  manifest["count"] = args.count;
  manifest["n_ops"] = args.n_ops;
  manifest["size"] = args.size;
  manifest["resolution"] = cfg.resolution;
  manifest["margin"] = cfg.margin;
  manifest["perturb_px"] = args.perturb_px;
  manifest["class_names"] = default_class_names();
  manifest["plans"] = io::json::array();
  for (int i = 0; i < args.count; ++i) {
    manifest["plans"].push_back({{"file", plan_stem(i) + ".json"},
                                 {"gt", plan_stem(i) + ".gt.fgrd"},
                                 {"seed", args.seed + static_cast<uint64_t>(i)}});
  }
  io::write_text(detail::join(cfg.out, "manifest.json"), manifest.dump(1) + "\n");
}

// ---------------------------------------------------------------------------
// pipeline / viz

struct PipelineResult {
  RasterMask mask;
  DensityMap density;
  DensityRegionSet density_regions;
  UnitRegionPartition partition;
  std::optional<LabelMap> gt;
  std::optional<RegionLabels> labels;
  std::optional<LabelMap> voted;
  io::json metrics;
};

/// Mask, density, partition and (when the plan has rooms) voted labels and
/// their scores against the room raster.
inline PipelineResult run_pipeline(const Floorplan& plan, const PipelineConfig& cfg) {
  check(cfg);
  PipelineResult r;
  r.mask = rasterize(plan, cfg.resolution, cfg.margin);
  r.density = density_map(r.mask);
  r.density_regions =
      merge_sloping(cluster_density_regions(r.density), plan, r.mask.transform);
  const SplitStrategy s = cfg.primary_strategy();
  r.partition = split_unit_regions(r.density_regions, s,
                                   raster_meters_per_pixel(plan, r.mask.transform));
  const PartitionStats st = partition_stats(r.partition);
  io::json& m = r.metrics;
  m["strategy"] = format_strategy(s);
  m["resolution"] = cfg.resolution;
  m["interior_pixels"] = r.mask.interior_count();
  m["density_regions"] = r.density_regions.regions.size();
  m["regions"] = st.region_count;
  m["area_m2"] = {{"mean", st.mean_area_m2}, {"min", st.min_area_m2}, {"max", st.max_area_m2}};
  m["misaligned_cut_ends"] = st.misaligned_cut_ends;
  if (!plan.rooms.empty()) {
    r.gt = room_label_map(plan, r.mask);
    r.gt->class_names = default_class_names();
    auto [labels, voted] = vote_labels(r.partition, *r.gt);
    const IouResult iu = iou(voted, *r.gt, r.gt->class_count());
    m["miou"] = iu.mean;
    m["pixel_accuracy"] = iu.pixel_accuracy;
    io::json per = io::json::array();
    for (const auto& v : iu.per_class) per.push_back(v ? io::json(*v) : io::json(nullptr));
    m["iou_per_class"] = per;
    m["boundary_f"] = {
        {"tol_px", cfg.tol_px},
        {"all", detail::score_json(boundary_f(voted, *r.gt, cfg.tol_px, BoundaryMode::kAll, r.mask))},
        {"internal",
         detail::score_json(boundary_f(voted, *r.gt, cfg.tol_px, BoundaryMode::kInternal, r.mask))}};
    r.labels = std::move(labels);
    r.voted = std::move(voted);
  }
  return r;
}

inline std::string overlay_svg(const Floorplan& plan, const PipelineResult& r) {
  return io::svg_overlay(plan, r.mask, r.density_regions, r.partition,
                         r.labels ? &*r.labels : nullptr, default_class_names());
}

/// Writes mask.fgrd/.pgm, density.fgrd (f32), density_raw.fgrd (u32),
/// partition.fgrd (i32) + partition.json, labels.fgrd, metrics.json and
/// overlay.svg.
inline PipelineResult cmd_pipeline(const std::string& plan_file, const PipelineConfig& cfg) {
  const Floorplan plan = io::load_floorplan(plan_file);
  PipelineResult r = run_pipeline(plan, cfg);
  detail::ensure_dir(cfg.out);
  auto path = [&](const char* name) { return detail::join(cfg.out, name); };
  io::save_grid(path("mask.fgrd"), r.mask.cells);
  {
    std::ofstream os(path("mask.pgm"), std::ios::binary);
    io::write_pgm(os, r.mask.cells);
  }
  {
    Grid<float> values(r.density.width(), r.density.height(), 0.0f);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<float>(r.density.values[i]);
    io::save_grid(path("density.fgrd"), values);
  }
  io::save_grid(path("density_raw.fgrd"), r.density.raw_sums);
  io::save_grid(path("partition.fgrd"), r.partition.region_id);
  io::write_text(path("partition.json"), io::to_json(r.partition).dump(1) + "\n");
  if (r.voted) io::save_grid(path("labels.fgrd"), r.voted->labels);
  io::write_text(path("metrics.json"), r.metrics.dump(1) + "\n");
  io::write_text(path("overlay.svg"), overlay_svg(plan, r));
  return r;
}

inline void cmd_viz(const std::string& plan_file, const PipelineConfig& cfg) {
  const Floorplan plan = io::load_floorplan(plan_file);
  const PipelineResult r = run_pipeline(plan, cfg);
  detail::ensure_dir(cfg.out);
  io::write_text(detail::join(cfg.out, "overlay.svg"), overlay_svg(plan, r));
}

// ---------------------------------------------------------------------------
// report

/// Loads plan files listed in manifest.json (or every *.json in the
/// directory, sorted) with their .gt.fgrd label maps; plans without a label
/// file are scored against their rasterized rooms.
inline std::vector<CorpusItem> load_corpus(const std::string& dir, const PipelineConfig& cfg,
                                           std::vector<std::string>* failures = nullptr) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "no corpus directory " + dir);
  std::vector<std::string> files;
  const std::string manifest = detail::join(dir, "manifest.json");
  if (fs::exists(manifest)) {
    const io::json m = io::parse_json_text(io::read_text(manifest), manifest);
    for (const auto& p : m.at("plans")) files.push_back(p.at("file").get<std::string>());
  } else {
    for (const auto& e : fs::directory_iterator(dir)) {
      const std::string name = e.path().filename().string();
      if (e.path().extension() == ".json" && name != "manifest.json") files.push_back(name);
    }
    std::sort(files.begin(), files.end());
  }
  std::vector<std::optional<CorpusItem>> items(files.size());
  std::vector<std::string> errors(files.size());
  detail::parallel_for(files.size(), cfg.jobs, [&](std::size_t i) {
    try {
      CorpusItem item;
      item.name = files[i];
      item.plan = io::load_floorplan(detail::join(dir, files[i]));
      const std::string gt = detail::join(dir, fs::path(files[i]).stem().string() + ".gt.fgrd");
      if (fs::exists(gt)) {
        item.gt.labels = io::load_grid<int32_t>(gt);
      } else {
        item.gt = room_label_map(item.plan, rasterize(item.plan, cfg.resolution, cfg.margin));
      }
      items[i] = std::move(item);
    } catch (const std::exception& e) {
      errors[i] = files[i] + ": " + e.what();
    }
  });
  std::vector<CorpusItem> out;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (items[i]) {
      out.push_back(std::move(*items[i]));
    } else if (failures) {
      failures->push_back(errors[i]);
    }
  }
  return out;
}

/// Writes report.csv and report.txt; load failures count as skipped plans.
inline Report cmd_report(const std::string& corpus_dir, const PipelineConfig& cfg) {
  check(cfg);
  std::vector<std::string> load_failures;
  const std::vector<CorpusItem> corpus = load_corpus(corpus_dir, cfg, &load_failures);
  const std::vector<SplitStrategy> strategies =
      cfg.strategies.empty() ? std::vector<SplitStrategy>{cfg.primary_strategy()} : cfg.strategies;
  Report report;
  if (!corpus.empty()) {
    ReportOptions opt;
    opt.margin = cfg.margin;
    opt.jobs = cfg.jobs;
    report = correlation_report(corpus, strategies, opt);
  }
  report.skipped += load_failures.size();
  report.errors.insert(report.errors.begin(), load_failures.begin(), load_failures.end());
  detail::ensure_dir(cfg.out);
  io::write_text(detail::join(cfg.out, "report.csv"), report_csv(report));
  io::write_text(detail::join(cfg.out, "report.txt"), report_table(report));
  return report;
}

// ---------------------------------------------------------------------------
// embed / group

/// Geometric region features of a plan under the primary strategy, with a
/// one-hot block from voted room labels when `with_labels` and the plan has
/// rooms.
inline RegionFeatures plan_region_features(const Floorplan& plan, const PipelineConfig& cfg,
                                           bool with_labels, PipelineResult* keep = nullptr) {
  PipelineResult r = run_pipeline(plan, cfg);
  RegionFeatures f;
  if (with_labels && r.labels) {
    f = geometric_features(r.partition, r.density, &*r.labels,
                           static_cast<int>(default_class_names().size()));
  } else {
    f = geometric_features(r.partition, r.density);
  }
  if (keep) *keep = std::move(r);
  return f;
}

inline std::vector<DenseLayer> default_embedding_layers(std::size_t input, uint64_t seed) {
  return default_layers(input, {32, 32}, seed);
}

/// Normalized features through the shared transform; the rows that embed()
/// reduces.
inline RegionFeatures encode_regions(const RegionFeatures& raw, const std::vector<DenseLayer>* layers,
                                     uint64_t seed) {
  const RegionFeatures norm = normalize_columns(raw);
  if (layers) return shared_transform(norm, *layers);
  return shared_transform(norm, default_embedding_layers(norm.cols(), seed));
}

inline Embedding plan_embedding(const Floorplan& plan, const PipelineConfig& cfg,
                                const std::vector<DenseLayer>* layers = nullptr) {
  return embed(encode_regions(plan_region_features(plan, cfg, false), layers, cfg.seed));
}

struct EmbedArgs {
  /// Floorplan JSON, or a features CSV when `features_input` is set.
  std::string input;
  bool features_input = false;
  std::string weights_file;
  std::string triplets_file;
};

struct EmbedResult {
  Embedding embedding;
  std::optional<double> triplet_accuracy;
};

inline std::string embedding_csv(const Embedding& e) {
  RegionFeatures m(1, e.size());
  for (std::size_t c = 0; c < e.size(); ++c) m(0, c) = e[c];
  return io::features_csv(m);
}

/// Writes region_features.csv (the encoded rows) and embedding.csv; with a
/// triplet file, also triplets.json holding the accuracy.
inline EmbedResult cmd_embed(const EmbedArgs& args, const PipelineConfig& cfg) {
  check(cfg);
  std::optional<std::vector<DenseLayer>> layers;
  if (!args.weights_file.empty()) {
    layers = io::layers_from_json(
        io::parse_json_text(io::read_text(args.weights_file), args.weights_file));
  }
  const std::vector<DenseLayer>* lp = layers ? &*layers : nullptr;
  detail::ensure_dir(cfg.out);
  EmbedResult result;
  if (!args.input.empty()) {
    RegionFeatures raw = args.features_input
                             ? io::parse_features_csv(io::read_text(args.input))
                             : plan_region_features(io::load_floorplan(args.input), cfg, false);
    const RegionFeatures rows = encode_regions(raw, lp, cfg.seed);
    result.embedding = embed(rows);
    io::write_text(detail::join(cfg.out, "region_features.csv"), io::features_csv(rows));
    io::write_text(detail::join(cfg.out, "embedding.csv"), embedding_csv(result.embedding));
  }
  if (!args.triplets_file.empty()) {
    const io::json t =
        io::parse_json_text(io::read_text(args.triplets_file), args.triplets_file);
    if (!t.is_array()) throw Error(ErrorCode::kFormat, args.triplets_file + ": expected a list");
    const fs::path base = fs::path(args.triplets_file).parent_path();
    std::vector<Embedding> a, p, n;
    auto load = [&](const io::json& entry, const char* key) {
      if (!entry.contains(key) || !entry[key].is_string()) {
        throw Error(ErrorCode::kFormat, args.triplets_file + ": triplet missing '" + key + "'");
      }
      return plan_embedding(io::load_floorplan((base / entry[key].get<std::string>()).string()), cfg, lp);
    };
    for (const auto& entry : t) {
      a.push_back(load(entry, "anchor"));
      p.push_back(load(entry, "positive"));
      n.push_back(load(entry, "negative"));
    }
    result.triplet_accuracy = triplet_accuracy(a, p, n);
    io::write_text(detail::join(cfg.out, "triplets.json"),
                   io::json{{"triplets", t.size()}, {"accuracy", *result.triplet_accuracy}}.dump(1) + "\n");
  }
  return result;
}

struct GroupArgs {
  std::string input;
  bool features_input = false;
  /// Explicit distance threshold; the widest-gap default otherwise.
  std::optional<double> threshold;
};

struct GroupResult {
  double threshold = 0.0;
  InstanceGrouping grouping;
  std::vector<int32_t> instance_labels;
};

/// Writes instances.json and, for plan input, instances.svg.
inline GroupResult cmd_group(const GroupArgs& args, const PipelineConfig& cfg) {
  check(cfg);
  detail::ensure_dir(cfg.out);
  GroupResult g;
  std::optional<Floorplan> plan;
  PipelineResult pr;
  RegionFeatures raw;
  if (args.features_input) {
    raw = io::parse_features_csv(io::read_text(args.input));
  } else {
    plan = io::load_floorplan(args.input);
    raw = plan_region_features(*plan, cfg, true, &pr);
  }
  const SimilarityMatrix s = pairwise_distance(normalize_columns(raw));
  g.threshold = args.threshold.value_or(default_threshold(s));
  g.grouping = group_instances(s, g.threshold);
  if (pr.labels) g.instance_labels = vote_room_type(g.grouping, *pr.labels);
  io::json out;
  out["threshold"] = g.threshold;
  out["instance_count"] = g.grouping.instance_count;
  out["instance_of_region"] = g.grouping.instance_of;
  out["instance_labels"] = g.instance_labels;
  io::write_text(detail::join(cfg.out, "instances.json"), out.dump(1) + "\n");
  if (plan) {
    io::write_text(detail::join(cfg.out, "instances.svg"),
                   io::svg_instances(*plan, pr.mask, pr.partition, g.grouping, g.instance_labels,
                                     default_class_names()));
  }
  return g;
}

}  // namespace floorgrid

#endif  // FLOORGRID_COMMANDS_HPP_
