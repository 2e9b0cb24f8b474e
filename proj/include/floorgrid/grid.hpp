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

#ifndef FLOORGRID_GRID_HPP_
#define FLOORGRID_GRID_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "floorgrid/error.hpp"

namespace floorgrid {

/// Half-open integer rectangle [x0, x1) x [y0, y1) in pixel units.
struct Box {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
  bool contains(int x, int y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }

  /// Grows the box so that it covers pixel (x, y).
  void extend(int x, int y) {
    if (empty()) {
      *this = Box{x, y, x + 1, y + 1};
      return;
    }
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x + 1);
    y1 = std::max(y1, y + 1);
  }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Dense row-major raster. Row 0 is the southern-most row, so (x, y) follows
/// the east/north axis convention used throughout the library.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative grid dimensions");
    }
    cells_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return cells_.size(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  T& operator()(int x, int y) { return cells_[index(x, y)]; }
  const T& operator()(int x, int y) const { return cells_[index(x, y)]; }
  T& operator[](std::size_t i) { return cells_[i]; }
  const T& operator[](std::size_t i) const { return cells_[i]; }

  std::span<T> cells() { return cells_; }
  std::span<const T> cells() const { return cells_; }

  bool same_shape(int width, int height) const {
    return width_ == width && height_ == height;
  }
  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return same_shape(other.width(), other.height());
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> cells_;
};

}  // namespace floorgrid

#endif  // FLOORGRID_GRID_HPP_
