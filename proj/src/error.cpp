// Copyright 2026 The matorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matorder/error.hpp"

namespace matorder {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kAmbientMismatch: return "AmbientMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonHermitian: return "NonHermitian";
    case ErrorCode::kOutOfSpan: return "OutOfSpan";
    case ErrorCode::kBasisMismatch: return "BasisMismatch";
    case ErrorCode::kLevelTooHigh: return "LevelTooHigh";
    case ErrorCode::kNonPositiveEps: return "NonPositiveEps";
    case ErrorCode::kNotPositiveContraction: return "NotPositiveContraction";
    case ErrorCode::kNumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::kNotAState: return "NotAState";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kInvalidStrategy: return "InvalidStrategy";
    case ErrorCode::kGeneratorNotProjection: return "GeneratorNotProjection";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kBadWeights: return "BadWeights";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace matorder
