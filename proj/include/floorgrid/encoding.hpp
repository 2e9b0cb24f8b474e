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

#ifndef FLOORGRID_ENCODING_HPP_
#define FLOORGRID_ENCODING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "floorgrid/density.hpp"
#include "floorgrid/error.hpp"
#include "floorgrid/labeling.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/synth.hpp"

namespace floorgrid {

/// Row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Per-pixel feature vectors, channels interleaved.
struct DenseFeatureMap {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  DenseFeatureMap() = default;
  DenseFeatureMap(int w, int h, int c, double fill = 0.0)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill) {}

  std::span<const double> at(std::size_t pixel) const {
    return {data.data() + pixel * channels, static_cast<std::size_t>(channels)};
  }
  std::span<double> at(std::size_t pixel) {
    return {data.data() + pixel * channels, static_cast<std::size_t>(channels)};
  }
};

/// N x m features, row i belongs to unit region i.
using RegionFeatures = Matrix;
using Embedding = std::vector<double>;
using SimilarityMatrix = Matrix;

enum class PoolReducer { kMean, kMax };

inline RegionFeatures region_pool(const DenseFeatureMap& fmap,
                                  const UnitRegionPartition& p,
                                  PoolReducer reducer = PoolReducer::kMean) {
  if (fmap.width != p.width() || fmap.height != p.height()) {
    throw Error(ErrorCode::kShapeMismatch, "feature map differs from partition");
  }
  const auto m = static_cast<std::size_t>(fmap.channels);
  RegionFeatures out(p.size(), m, 0.0);
  for (std::size_t r = 0; r < p.size(); ++r) {
    const auto& pixels = p.regions[r].pixels;
    if (pixels.empty()) {
      throw Error(ErrorCode::kEmptyRegion, "region " + std::to_string(r) + " is empty");
    }
    auto row = out.row(r);
    if (reducer == PoolReducer::kMax) {
      std::fill(row.begin(), row.end(), -std::numeric_limits<double>::infinity());
    }
    for (uint32_t i : pixels) {
      const auto f = fmap.at(i);
      for (std::size_t c = 0; c < m; ++c) {
        if (reducer == PoolReducer::kMax) {
          row[c] = std::max(row[c], f[c]);
        } else {
          row[c] += f[c];
        }
      }
    }
    if (reducer == PoolReducer::kMean) {
      for (double& v : row) v /= static_cast<double>(pixels.size());
    }
  }
  return out;
}

/// Three-channel stand-in for an encoder output: mask indicator, normalized
/// density, density.
inline DenseFeatureMap density_feature_map(const DensityMap& d) {
  const NormalizedDensityMap nd = normalize_density(d);
  DenseFeatureMap f(d.width(), d.height(), 3);
  for (std::size_t i = 0; i < d.raw_sums.size(); ++i) {
    auto v = f.at(i);
    v[0] = d.interior(i) ? 1.0 : 0.0;
    v[1] = nd.values[i];
    v[2] = d.values[i];
  }
  return f;
}

// ---------------------------------------------------------------------------
// Shared per-region transform

struct DenseLayer {
  /// out x in weights.
  Matrix weights;
  std::vector<double> bias;
  bool relu = true;
};

/// Applies the same affine (+ ReLU) stack to every row.
inline RegionFeatures shared_transform(const RegionFeatures& r,
                                       const std::vector<DenseLayer>& layers) {
  RegionFeatures cur = r;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    if (layer.weights.cols() != cur.cols() ||
        layer.bias.size() != layer.weights.rows()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "layer " + std::to_string(l) + " expects " +
                      std::to_string(layer.weights.cols()) + " inputs, got " +
                      std::to_string(cur.cols()));
    }
    RegionFeatures next(cur.rows(), layer.weights.rows(), 0.0);
    for (std::size_t i = 0; i < cur.rows(); ++i) {
      const auto in = cur.row(i);
      for (std::size_t o = 0; o < layer.weights.rows(); ++o) {
        double acc = layer.bias[o];
        const auto wrow = layer.weights.row(o);
        for (std::size_t k = 0; k < in.size(); ++k) acc += wrow[k] * in[k];
        next(i, o) = layer.relu ? std::max(0.0, acc) : acc;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

/// Seeded Glorot-uniform initializer with zero biases; the last layer has no
/// ReLU.
inline std::vector<DenseLayer> default_layers(std::size_t input,
                                              const std::vector<std::size_t>& widths,
                                              uint64_t seed = 0) {
  SeededRng rng(seed);
  std::vector<DenseLayer> layers;
  std::size_t in = input;
  for (std::size_t l = 0; l < widths.size(); ++l) {
    const std::size_t out = widths[l];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    DenseLayer layer{Matrix(out, in), std::vector<double>(out, 0.0),
                     l + 1 < widths.size()};
    for (std::size_t o = 0; o < out; ++o) {
      for (std::size_t k = 0; k < in; ++k) {
        layer.weights(o, k) = (2.0 * rng.unit() - 1.0) * limit;
      }
    }
    layers.push_back(std::move(layer));
    in = out;
  }
  return layers;
}

// ---------------------------------------------------------------------------
// Geometric region features

inline constexpr std::size_t kGeometricChannels = 7;

/// Per region: [area m^2, bbox width m, bbox height m, centroid x, centroid y,
/// mean density, density key], centroids normalized to the interior bbox,
/// followed by a one-hot class block of width `classes` when labels are
/// given.
inline RegionFeatures geometric_features(const UnitRegionPartition& p,
                                         const DensityMap& d,
                                         const RegionLabels* labels = nullptr,
                                         int classes = 0) {
  if (!d.raw_sums.same_shape(p.region_id)) {
    throw Error(ErrorCode::kShapeMismatch, "density map differs from partition");
  }
  if (labels && labels->labels.size() != p.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one label per region expected");
  }
  const int w = p.width();
  Box plan_box;
  for (const UnitRegion& r : p.regions) {
    if (r.bbox.empty()) continue;
    plan_box.extend(r.bbox.x0, r.bbox.y0);
    plan_box.extend(r.bbox.x1 - 1, r.bbox.y1 - 1);
  }
  const std::size_t onehot = labels ? static_cast<std::size_t>(classes) : 0;
  RegionFeatures out(p.size(), kGeometricChannels + onehot, 0.0);
  for (std::size_t r = 0; r < p.size(); ++r) {
    const UnitRegion& ur = p.regions[r];
    double sx = 0.0, sy = 0.0, sd = 0.0;
    for (uint32_t i : ur.pixels) {
      sx += static_cast<double>(i % w) + 0.5;
      sy += static_cast<double>(i / w) + 0.5;
      sd += d.values[i];
    }
    const double n = static_cast<double>(ur.pixels.size());
    auto row = out.row(r);
    row[0] = n * p.scale * p.scale;
    row[1] = ur.bbox.width() * p.scale;
    row[2] = ur.bbox.height() * p.scale;
    row[3] = (sx / n - plan_box.x0) / plan_box.width();
    row[4] = (sy / n - plan_box.y0) / plan_box.height();
    row[5] = sd / n;
    row[6] = static_cast<double>(ur.density_key);
    if (labels) {
      const int32_t c = labels->labels[r];
      if (c >= 0 && c < classes) row[kGeometricChannels + c] = 1.0;
    }
  }
  return out;
}

/// Min-max scales every column to [0, 1]; constant columns become 0.
inline RegionFeatures normalize_columns(const RegionFeatures& r) {
  RegionFeatures out = r;
  for (std::size_t c = 0; c < r.cols(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      lo = std::min(lo, r(i, c));
      hi = std::max(hi, r(i, c));
    }
    for (std::size_t i = 0; i < r.rows(); ++i) {
      out(i, c) = hi > lo ? (r(i, c) - lo) / (hi - lo) : 0.0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Embedding and retrieval

/// Channel-wise maximum over rows: invariant to row order.
inline Embedding embed(const RegionFeatures& r) {
  if (r.rows() == 0) {
    throw Error(ErrorCode::kEmptyFeatureSet, "cannot embed zero regions");
  }
  Embedding g(r.row(0).begin(), r.row(0).end());
  for (std::size_t i = 1; i < r.rows(); ++i) {
    const auto row = r.row(i);
    for (std::size_t c = 0; c < g.size(); ++c) g[c] = std::max(g[c], row[c]);
  }
  return g;
}

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "vectors differ in length");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Percentage of triplets whose anchor is strictly closer to the positive
/// than to the negative.
inline double triplet_accuracy(const std::vector<Embedding>& anchors,
                               const std::vector<Embedding>& positives,
                               const std::vector<Embedding>& negatives) {
  if (anchors.size() != positives.size() || anchors.size() != negatives.size()) {
    throw Error(ErrorCode::kLengthMismatch, "triplet lists differ in length");
  }
  if (anchors.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (euclidean(anchors[i], positives[i]) < euclidean(anchors[i], negatives[i])) {
      ++correct;
    }
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(anchors.size());
}

// ---------------------------------------------------------------------------
// Instance grouping

inline SimilarityMatrix pairwise_distance(const RegionFeatures& r) {
  const std::size_t n = r.rows();
  SimilarityMatrix s(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      s(i, j) = s(j, i) = euclidean(r.row(i), r.row(j));
    }
  }
  return s;
}

/// Midpoint of the widest gap in the sorted sequence {0} + off-diagonal
/// distances; used when no explicit threshold is given.
inline double default_threshold(const SimilarityMatrix& s) {
  std::vector<double> v{0.0};
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = i + 1; j < s.cols(); ++j) v.push_back(s(i, j));
  }
  std::sort(v.begin(), v.end());
  double best_gap = -1.0;
  double threshold = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double gap = v[k + 1] - v[k];
    if (gap > best_gap) {
      best_gap = gap;
      threshold = 0.5 * (v[k] + v[k + 1]);
    }
  }
  return threshold;
}

struct InstanceGrouping {
  /// Instance id of every region; ids are dense and ordered by their smallest
  /// member region.
  std::vector<int> instance_of;
  int instance_count = 0;
};

/// Connected components of the graph with an edge wherever s(i, j) <
/// threshold.
inline InstanceGrouping group_instances(const SimilarityMatrix& s, double threshold) {
  if (s.rows() != s.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "similarity matrix must be square");
  }
  if (!(threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be >= 0");
  }
  const std::size_t n = s.rows();
  detail::DisjointSet ds(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s(i, j) < threshold) ds.unite(static_cast<int>(i), static_cast<int>(j));
    }
  }
  InstanceGrouping g;
  g.instance_of.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const int root = ds.find(static_cast<int>(i));
    if (id_of_root[root] < 0) id_of_root[root] = g.instance_count++;
    g.instance_of[i] = id_of_root[root];
  }
  return g;
}

/// Modal region label per instance; ties go to the lowest class id.
inline std::vector<int32_t> vote_room_type(const InstanceGrouping& g,
                                           const RegionLabels& labels) {
  if (g.instance_of.size() != labels.labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one label per region expected");
  }
  int32_t classes = 0;
  for (int32_t c : labels.labels) classes = std::max(classes, c + 1);
  std::vector<std::vector<std::size_t>> counts(
      static_cast<std::size_t>(g.instance_count),
      std::vector<std::size_t>(static_cast<std::size_t>(classes), 0));
  for (std::size_t r = 0; r < labels.labels.size(); ++r) {
    if (labels.labels[r] >= 0) ++counts[g.instance_of[r]][labels.labels[r]];
  }
  std::vector<int32_t> out;
  out.reserve(counts.size());
  for (const auto& c : counts) out.push_back(detail::modal(c));
  return out;
}

}  // namespace floorgrid

#endif  // FLOORGRID_ENCODING_HPP_
