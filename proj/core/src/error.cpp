// Copyright 2026 The ripforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ripforge/error.hpp"

namespace ripforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInvalidModulus: return "InvalidModulus";
    case ErrorCode::kNoPrimeInRange: return "NoPrimeInRange";
    case ErrorCode::kCountExceedsFamily: return "CountExceedsFamily";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNotUnimodular: return "NotUnimodular";
    case ErrorCode::kTooManyColumns: return "TooManyColumns";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kZeroColumn: return "ZeroColumn";
    case ErrorCode::kZeroRow: return "ZeroRow";
    case ErrorCode::kNotSignMatrix: return "NotSignMatrix";
    case ErrorCode::kRoundsExhausted: return "RoundsExhausted";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInvalidPointSet: return "InvalidPointSet";
    case ErrorCode::kUnsupportedK: return "UnsupportedK";
    case ErrorCode::kEpsilonOutOfRange: return "EpsilonOutOfRange";
  }
  return "Unknown";
}

}  // namespace ripforge
