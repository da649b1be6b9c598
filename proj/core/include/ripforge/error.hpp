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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ripforge {

enum class ErrorCode {
  kInvalidParams,
  kInvalidModulus,
  kNoPrimeInRange,
  kCountExceedsFamily,
  kDimensionMismatch,
  kParseError,
  kIoError,
  kNotUnimodular,
  kTooManyColumns,
  kZeroVector,
  kZeroColumn,
  kZeroRow,
  kNotSignMatrix,
  kRoundsExhausted,
  kInvalidDelta,
  kTooLarge,
  kInvalidPointSet,
  kUnsupportedK,
  kEpsilonOutOfRange,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library. The code identifies the contract that
// was violated; what() carries a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ripforge
