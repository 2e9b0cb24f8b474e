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

#ifndef FLOORGRID_ERROR_HPP_
#define FLOORGRID_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace floorgrid {

enum class ErrorCode {
  kInvalidSqueeze,
  kDegeneratePolygon,
  kEmptyInterior,
  kEmptyRegion,
  kEmptyFeatureSet,
  kShapeMismatch,
  kLengthMismatch,
  kInvalidArgument,
  kFormat,
  kIo,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSqueeze: return "InvalidSqueeze";
    case ErrorCode::kDegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::kEmptyInterior: return "EmptyInterior";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kEmptyFeatureSet: return "EmptyFeatureSet";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace floorgrid

#endif  // FLOORGRID_ERROR_HPP_
