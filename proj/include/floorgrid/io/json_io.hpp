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

#ifndef FLOORGRID_IO_JSON_IO_HPP_
#define FLOORGRID_IO_JSON_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "floorgrid/encoding.hpp"
#include "floorgrid/error.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/partition.hpp"
#include "json.hpp"

namespace floorgrid::io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kFormat, path + ": " + what);
}

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

inline int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

inline Point point(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected [x, y]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

inline Polygon polygon(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list of [x, y] points");
  Polygon out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(point(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline json to_json(const Polygon& poly) {
  json out = json::array();
  for (const Point& p : poly) out.push_back({p.x, p.y});
  return out;
}

inline OpeningKind opening_kind(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  const std::string s = v.get<std::string>();
  if (s == "door") return OpeningKind::kDoor;
  if (s == "window") return OpeningKind::kWindow;
  if (s == "front_door") return OpeningKind::kFrontDoor;
  fail(path, "unknown opening kind '" + s + "'");
}

}  // namespace detail

/// Floorplan schema:
/// {"meters_per_pixel": f, "vertices": [[x, y], ...],
///  "openings": [{"a": [x, y], "b": [x, y], "kind": "door|window|front_door",
///                "label": k}],
///  "rooms": [{"polygon": [[x, y], ...], "label": k}],
///  "edge_flags": ["axis_aligned" | "sloping", ...]}
/// Only meters_per_pixel and vertices are required.
inline json to_json(const Floorplan& plan) {
  json out;
  out["meters_per_pixel"] = plan.meters_per_pixel;
  out["vertices"] = detail::to_json(plan.vertices);
  out["openings"] = json::array();
  for (const Opening& o : plan.openings) {
    out["openings"].push_back({{"a", {o.a.x, o.a.y}},
                               {"b", {o.b.x, o.b.y}},
                               {"kind", std::string(to_string(o.kind))},
                               {"label", o.label}});
  }
  out["rooms"] = json::array();
  for (const Room& r : plan.rooms) {
    out["rooms"].push_back({{"polygon", detail::to_json(r.polygon)}, {"label", r.label}});
  }
  out["edge_flags"] = json::array();
  for (EdgeFlag f : plan.edge_flags) {
    out["edge_flags"].push_back(f == EdgeFlag::kSloping ? "sloping" : "axis_aligned");
  }
  return out;
}

inline Floorplan floorplan_from_json(const json& j) {
  const std::string root = "floorplan";
  Floorplan plan;
  plan.meters_per_pixel =
      detail::number(detail::field(j, "meters_per_pixel", root), root + ".meters_per_pixel");
  plan.vertices = detail::polygon(detail::field(j, "vertices", root), root + ".vertices");
  if (j.contains("openings")) {
    const json& arr = j["openings"];
    if (!arr.is_array()) detail::fail(root + ".openings", "expected a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = root + ".openings[" + std::to_string(i) + "]";
      Opening o;
      o.a = detail::point(detail::field(arr[i], "a", p), p + ".a");
      o.b = detail::point(detail::field(arr[i], "b", p), p + ".b");
      o.kind = detail::opening_kind(detail::field(arr[i], "kind", p), p + ".kind");
      if (arr[i].contains("label")) o.label = detail::integer(arr[i]["label"], p + ".label");
      plan.openings.push_back(o);
    }
  }
  if (j.contains("rooms")) {
    const json& arr = j["rooms"];
    if (!arr.is_array()) detail::fail(root + ".rooms", "expected a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = root + ".rooms[" + std::to_string(i) + "]";
      Room r;
      r.polygon = detail::polygon(detail::field(arr[i], "polygon", p), p + ".polygon");
      r.label = detail::integer(detail::field(arr[i], "label", p), p + ".label");
      plan.rooms.push_back(std::move(r));
    }
  }
  if (j.contains("edge_flags")) {
    const json& arr = j["edge_flags"];
    if (!arr.is_array()) detail::fail(root + ".edge_flags", "expected a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = root + ".edge_flags[" + std::to_string(i) + "]";
      if (!arr[i].is_string()) detail::fail(p, "expected a string");
      const std::string s = arr[i].get<std::string>();
      if (s == "axis_aligned") {
        plan.edge_flags.push_back(EdgeFlag::kAxisAligned);
      } else if (s == "sloping") {
        plan.edge_flags.push_back(EdgeFlag::kSloping);
      } else {
        detail::fail(p, "unknown edge flag '" + s + "'");
      }
    }
  }
  return plan;
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kFormat, source + ": " + e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path);
  os << text;
  if (!os) throw Error(ErrorCode::kIo, "write failed: " + path);
}

inline Floorplan load_floorplan(const std::string& path) {
  const json j = parse_json_text(read_text(path), path);
  try {
    return floorplan_from_json(j);
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, path + ": " + e.what());
  }
}

inline void save_floorplan(const std::string& path, const Floorplan& plan) {
  write_text(path, to_json(plan).dump(1) + "\n");
}

// ---------------------------------------------------------------------------
// Partition sidecar and transform weights

inline json to_json(const UnitRegionPartition& p) {
  json out;
  out["strategy"] = {{"grid_m", p.strategy.grid_m},
                     {"grid_n", p.strategy.grid_n},
                     {"min_size_m", p.strategy.min_size_m}};
  out["meters_per_pixel"] = p.scale;
  out["width"] = p.width();
  out["height"] = p.height();
  out["regions"] = json::array();
  for (const UnitRegion& r : p.regions) {
    out["regions"].push_back({{"id", r.id},
                              {"parent", r.parent},
                              {"cell", {r.cell_i, r.cell_j}},
                              {"cell_box", {r.cell.x0, r.cell.y0, r.cell.x1, r.cell.y1}},
                              {"bbox", {r.bbox.x0, r.bbox.y0, r.bbox.x1, r.bbox.y1}},
                              {"pixels", r.pixels.size()},
                              {"density_key", r.density_key}});
  }
  return out;
}

/// Rebuilds a partition from its id grid and sidecar.
inline UnitRegionPartition partition_from_json(const json& j, const Grid<int32_t>& ids) {
  const std::string root = "partition";
  UnitRegionPartition p;
  const json& st = detail::field(j, "strategy", root);
  p.strategy.grid_m = detail::integer(detail::field(st, "grid_m", root + ".strategy"),
                                      root + ".strategy.grid_m");
  p.strategy.grid_n = detail::integer(detail::field(st, "grid_n", root + ".strategy"),
                                      root + ".strategy.grid_n");
  p.strategy.min_size_m = detail::number(detail::field(st, "min_size_m", root + ".strategy"),
                                         root + ".strategy.min_size_m");
  p.scale = detail::number(detail::field(j, "meters_per_pixel", root), root + ".meters_per_pixel");
  p.region_id = ids;
  const json& arr = detail::field(j, "regions", root);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string path = root + ".regions[" + std::to_string(k) + "]";
    const json& r = arr[k];
    UnitRegion ur;
    ur.id = detail::integer(detail::field(r, "id", path), path + ".id");
    ur.parent = detail::integer(detail::field(r, "parent", path), path + ".parent");
    const json& cell = detail::field(r, "cell", path);
    ur.cell_i = cell.at(0).get<int>();
    ur.cell_j = cell.at(1).get<int>();
    const json& cb = detail::field(r, "cell_box", path);
    ur.cell = {cb.at(0).get<int>(), cb.at(1).get<int>(), cb.at(2).get<int>(), cb.at(3).get<int>()};
    const json& bb = detail::field(r, "bbox", path);
    ur.bbox = {bb.at(0).get<int>(), bb.at(1).get<int>(), bb.at(2).get<int>(), bb.at(3).get<int>()};
    ur.density_key = detail::field(r, "density_key", path).get<uint32_t>();
    p.regions.push_back(std::move(ur));
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int32_t r = ids[i];
    if (r < -1 || r >= static_cast<int32_t>(p.regions.size())) {
      detail::fail(root, "region id out of range in grid");
    }
    if (r >= 0) p.regions[r].pixels.push_back(static_cast<uint32_t>(i));
  }
  return p;
}

/// [{"weights": [[...], ...], "bias": [...], "relu": true}, ...]
inline json to_json(const std::vector<DenseLayer>& layers) {
  json out = json::array();
  for (const DenseLayer& l : layers) {
    json w = json::array();
    for (std::size_t o = 0; o < l.weights.rows(); ++o) {
      const auto row = l.weights.row(o);
      w.push_back(std::vector<double>(row.begin(), row.end()));
    }
    out.push_back({{"weights", w}, {"bias", l.bias}, {"relu", l.relu}});
  }
  return out;
}

inline std::vector<DenseLayer> layers_from_json(const json& j) {
  if (!j.is_array()) detail::fail("layers", "expected a list of layers");
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l < j.size(); ++l) {
    const std::string path = "layers[" + std::to_string(l) + "]";
    const json& w = detail::field(j[l], "weights", path);
    if (!w.is_array() || w.empty() || !w[0].is_array()) {
      detail::fail(path + ".weights", "expected a non-empty matrix");
    }
    DenseLayer layer{Matrix(w.size(), w[0].size()), {}, true};
    for (std::size_t o = 0; o < w.size(); ++o) {
      if (!w[o].is_array() || w[o].size() != layer.weights.cols()) {
        detail::fail(path + ".weights[" + std::to_string(o) + "]", "ragged matrix row");
      }
      for (std::size_t k = 0; k < w[o].size(); ++k) {
        layer.weights(o, k) = detail::number(w[o][k], path + ".weights");
      }
    }
    const json& b = detail::field(j[l], "bias", path);
    if (!b.is_array()) detail::fail(path + ".bias", "expected a list");
    for (const json& v : b) layer.bias.push_back(detail::number(v, path + ".bias"));
    if (j[l].contains("relu")) layer.relu = j[l]["relu"].get<bool>();
    layers.push_back(std::move(layer));
  }
  return layers;
}

}  // namespace floorgrid::io

#endif  // FLOORGRID_IO_JSON_IO_HPP_
