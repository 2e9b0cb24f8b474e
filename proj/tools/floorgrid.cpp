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

// floorgrid command line: synth, pipeline, report, embed, group, viz.
// Exit codes: 0 success, 1 runtime failure, 2 input or usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "floorgrid/commands.hpp"

namespace {

int exit_code_for(const floorgrid::Error& e) {
  switch (e.code()) {
    case floorgrid::ErrorCode::kFormat:
    case floorgrid::ErrorCode::kInvalidArgument:
    case floorgrid::ErrorCode::kInvalidSqueeze:
    case floorgrid::ErrorCode::kDegeneratePolygon:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace floorgrid;

  CLI::App app{"floorgrid: density maps and unit-region partitions of floorplans"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  int resolution = 256;
  int margin = 0;
  std::vector<std::string> strategies;
  int tol_px = 1;
  uint64_t seed = 0;
  int jobs = 1;
  std::string out = ".";
  app.add_option("--config", config_file, "JSON config; flags override it");
  app.add_option("--resolution", resolution, "raster size in pixels (default 256)");
  app.add_option("--margin", margin, "raster margin in pixels (default 0)");
  app.add_option("--strategy", strategies, "splitting strategy MxN:h, repeatable");
  app.add_option("--tol-px", tol_px, "boundary F tolerance in pixels (default 1)");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--jobs", jobs, "parallel workers (default $FLOORGRID_JOBS or 1)");
  app.add_option("--out", out, "output directory");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate synthetic floorplans with ground truth");
  synth_cmd->add_option("--count", synth.count, "number of plans")->default_val(1);
  synth_cmd->add_option("--ops", synth.n_ops, "squeeze operations per plan")->default_val(4);
  synth_cmd->add_option("--size", synth.size, "base size in plan pixels")->default_val(64);
  synth_cmd->add_option("--perturb", synth.perturb_px, "shift ground-truth boundaries by k pixels")
      ->default_val(0);

  std::string plan_file;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "mask, density, partition, labels, metrics");
  pipeline_cmd->add_option("plan", plan_file, "floorplan JSON")->required();

  std::string corpus_dir;
  auto* report_cmd = app.add_subcommand("report", "IoU and region counts per strategy");
  report_cmd->add_option("corpus", corpus_dir, "directory written by synth")->required();

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "region features and floorplan embedding");
  embed_cmd->add_option("input", embed_args.input, "floorplan JSON or features CSV");
  embed_cmd->add_flag("--features", embed_args.features_input, "input is a features CSV");
  embed_cmd->add_option("--weights", embed_args.weights_file, "transform weights JSON");
  embed_cmd->add_option("--triplets", embed_args.triplets_file, "triplet list JSON");

  GroupArgs group_args;
  std::optional<double> threshold;
  auto* group_cmd = app.add_subcommand("group", "instance grouping of unit regions");
  group_cmd->add_option("input", group_args.input, "floorplan JSON or features CSV")->required();
  group_cmd->add_flag("--features", group_args.features_input, "input is a features CSV");
  group_cmd->add_option("--threshold", threshold, "distance threshold (default: widest gap)");

  std::string viz_file;
  auto* viz_cmd = app.add_subcommand("viz", "SVG overlay of density regions and unit regions");
  viz_cmd->add_option("plan", viz_file, "floorplan JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    PipelineConfig cfg;
    cfg.jobs = default_jobs();
    if (!config_file.empty()) {
      cfg = config_from_json(io::parse_json_text(io::read_text(config_file), config_file), cfg);
    }
    if (app.count("--resolution")) cfg.resolution = resolution;
    if (app.count("--margin")) cfg.margin = margin;
    if (app.count("--tol-px")) cfg.tol_px = tol_px;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--jobs")) cfg.jobs = jobs;
    if (app.count("--out")) cfg.out = out;
    if (!strategies.empty()) {
      cfg.strategies.clear();
      for (const std::string& s : strategies) cfg.strategies.push_back(parse_strategy(s));
    }
    check(cfg);

    if (*synth_cmd) {
      synth.seed = cfg.seed;
      cmd_synth(synth, cfg);
      std::cout << "wrote " << synth.count << " plans to " << cfg.out << "\n";
    } else if (*pipeline_cmd) {
      const PipelineResult r = cmd_pipeline(plan_file, cfg);
      std::cout << r.metrics.dump(1) << "\n";
    } else if (*report_cmd) {
      const Report r = cmd_report(corpus_dir, cfg);
      std::cout << report_table(r);
      for (const std::string& e : r.errors) std::cerr << "skipped " << e << "\n";
      if (r.plans == 0) return 1;
    } else if (*embed_cmd) {
      if (embed_args.input.empty() && embed_args.triplets_file.empty()) {
        std::cerr << "embed: need an input file or --triplets\n";
        return 2;
      }
      const EmbedResult r = cmd_embed(embed_args, cfg);
      if (!r.embedding.empty()) std::cout << embedding_csv(r.embedding);
      if (r.triplet_accuracy) std::cout << "triplet accuracy: " << *r.triplet_accuracy << "%\n";
    } else if (*group_cmd) {
      group_args.threshold = threshold;
      const GroupResult r = cmd_group(group_args, cfg);
      std::cout << r.grouping.instance_count << " instances (threshold " << r.threshold << ")\n";
    } else if (*viz_cmd) {
      cmd_viz(viz_file, cfg);
    }
  } catch (const Error& e) {
    std::cerr << "floorgrid: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "floorgrid: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
