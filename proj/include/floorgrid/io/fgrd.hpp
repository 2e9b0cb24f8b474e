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

#ifndef FLOORGRID_IO_FGRD_HPP_
#define FLOORGRID_IO_FGRD_HPP_

// FGRD raw grid files: a 16-byte little-endian header
//   "FGRD" | u32 width | u32 height | u32 tag
// followed by width * height * channels cells, rows south to north, channels
// interleaved. The tag's low byte is the cell type; bits 8..31 hold
// channels - 1, so single-channel files carry the bare type code.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "floorgrid/error.hpp"
#include "floorgrid/grid.hpp"

namespace floorgrid::io {

enum class CellType : uint8_t { kU8 = 1, kI32 = 2, kU32 = 3, kF32 = 4, kF64 = 5 };

inline std::size_t cell_bytes(CellType t) {
  switch (t) {
    case CellType::kU8: return 1;
    case CellType::kI32:
    case CellType::kU32:
    case CellType::kF32: return 4;
    case CellType::kF64: return 8;
  }
  return 0;
}

template <typename T>
constexpr CellType cell_type_of() {
  if constexpr (std::is_same_v<T, uint8_t>) return CellType::kU8;
  else if constexpr (std::is_same_v<T, int32_t>) return CellType::kI32;
  else if constexpr (std::is_same_v<T, uint32_t>) return CellType::kU32;
  else if constexpr (std::is_same_v<T, float>) return CellType::kF32;
  else {
    static_assert(std::is_same_v<T, double>, "unsupported FGRD cell type");
    return CellType::kF64;
  }
}

/// Decoded file; every supported cell type converts to double exactly.
struct FgrdData {
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 1;
  CellType type = CellType::kU8;
  std::vector<double> values;
};

namespace detail {

inline void put_u32(std::ostream& os, uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff),
                              static_cast<char>((v >> 24) & 0xff)};
  os.write(b.data(), 4);
}

inline uint32_t get_u32(const unsigned char* p) {
  return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) |
         (uint32_t(p[3]) << 24);
}

/// Appends the n bytes at `src` least significant first.
inline void put_le(std::vector<char>& out, const void* src, std::size_t n) {
  char buf[8];
  std::memcpy(buf, src, n);
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < n / 2; ++i) std::swap(buf[i], buf[n - 1 - i]);
  }
  out.insert(out.end(), buf, buf + n);
}

}  // namespace detail

/// Writes `values` (width * height * channels entries) converted to `type`.
inline void write_fgrd(std::ostream& os, uint32_t width, uint32_t height, uint32_t channels,
                       CellType type, std::span<const double> values) {
  if (channels < 1 || values.size() != std::size_t(width) * height * channels) {
    throw Error(ErrorCode::kInvalidArgument, "FGRD value count mismatch");
  }
  os.write("FGRD", 4);
  detail::put_u32(os, width);
  detail::put_u32(os, height);
  detail::put_u32(os, static_cast<uint32_t>(type) | ((channels - 1) << 8));
  std::vector<char> payload;
  payload.reserve(values.size() * cell_bytes(type));
  for (double v : values) {
    switch (type) {
      case CellType::kU8: {
        const auto c = static_cast<uint8_t>(v);
        detail::put_le(payload, &c, 1);
        break;
      }
      case CellType::kI32: {
        const auto c = static_cast<int32_t>(v);
        detail::put_le(payload, &c, 4);
        break;
      }
      case CellType::kU32: {
        const auto c = static_cast<uint32_t>(v);
        detail::put_le(payload, &c, 4);
        break;
      }
      case CellType::kF32: {
        const auto c = static_cast<float>(v);
        detail::put_le(payload, &c, 4);
        break;
      }
      case CellType::kF64: detail::put_le(payload, &v, 8); break;
    }
  }
  os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!os) throw Error(ErrorCode::kIo, "FGRD write failed");
}

inline FgrdData read_fgrd(std::istream& is) {
  unsigned char header[16];
  if (!is.read(reinterpret_cast<char*>(header), 16)) {
    throw Error(ErrorCode::kFormat, "FGRD: truncated header");
  }
  if (std::memcmp(header, "FGRD", 4) != 0) {
    throw Error(ErrorCode::kFormat, "FGRD: bad magic");
  }
  FgrdData d;
  d.width = detail::get_u32(header + 4);
  d.height = detail::get_u32(header + 8);
  const uint32_t tag = detail::get_u32(header + 12);
  const uint32_t type = tag & 0xff;
  if (type < 1 || type > 5) {
    throw Error(ErrorCode::kFormat, "FGRD: unknown cell type " + std::to_string(type));
  }
  d.type = static_cast<CellType>(type);
  d.channels = (tag >> 8) + 1;
  const std::size_t count = std::size_t(d.width) * d.height * d.channels;
  const std::size_t bytes = cell_bytes(d.type);
  std::vector<unsigned char> raw(count * bytes);
  if (!is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw Error(ErrorCode::kFormat, "FGRD: truncated payload");
  }
  d.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    unsigned char b[8];
    std::memcpy(b, raw.data() + i * bytes, bytes);
    if constexpr (std::endian::native == std::endian::big) {
      for (std::size_t k = 0; k < bytes / 2; ++k) std::swap(b[k], b[bytes - 1 - k]);
    }
    switch (d.type) {
      case CellType::kU8: d.values[i] = b[0]; break;
      case CellType::kI32: {
        int32_t v;
        std::memcpy(&v, b, 4);
        d.values[i] = v;
        break;
      }
      case CellType::kU32: {
        uint32_t v;
        std::memcpy(&v, b, 4);
        d.values[i] = v;
        break;
      }
      case CellType::kF32: {
        float v;
        std::memcpy(&v, b, 4);
        d.values[i] = v;
        break;
      }
      case CellType::kF64: std::memcpy(&d.values[i], b, 8); break;
    }
  }
  return d;
}

template <typename T>
void write_grid(std::ostream& os, const Grid<T>& g) {
  std::vector<double> v(g.cells().begin(), g.cells().end());
  write_fgrd(os, g.width(), g.height(), 1, cell_type_of<T>(), v);
}

/// Reads a single-channel file whose cell type matches T.
template <typename T>
Grid<T> read_grid(std::istream& is) {
  const FgrdData d = read_fgrd(is);
  if (d.type != cell_type_of<T>() || d.channels != 1) {
    throw Error(ErrorCode::kFormat, "FGRD: unexpected cell type or channel count");
  }
  Grid<T> g(static_cast<int>(d.width), static_cast<int>(d.height));
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<T>(d.values[i]);
  return g;
}

template <typename T>
void save_grid(const std::string& path, const Grid<T>& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path);
  write_grid(os, g);
}

template <typename T>
Grid<T> load_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_grid<T>(is);
}

inline FgrdData load_fgrd(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_fgrd(is);
}

}  // namespace floorgrid::io

#endif  // FLOORGRID_IO_FGRD_HPP_
