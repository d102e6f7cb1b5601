// Copyright 2026 The obbscene Authors
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

#include "obbscene/error.h"

namespace obbscene {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput:
      return "EmptyInput";
    case ErrorCode::kInsufficientPoints:
      return "InsufficientPoints";
    case ErrorCode::kDegenerateNeighborhood:
      return "DegenerateNeighborhood";
    case ErrorCode::kInvalidDirection:
      return "InvalidDirection";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kNonConvergence:
      return "NonConvergence";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kUnsupportedFormat:
      return "UnsupportedFormat";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kNotImplemented:
      return "NotImplemented";
  }
  return "Unknown";
}

bool IsNumericalFailure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kDegenerateNeighborhood:
    case ErrorCode::kInvalidDirection:
    case ErrorCode::kNotImplemented:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

std::string Error::detail() const {
  return std::string(what()).substr(ErrorCodeName(code_).size() + 2);
}

Error Error::WithStage(const std::string& stage) const {
  Error annotated(code_, "stage '" + stage + "': " + detail());
  annotated.stage_ = stage;
  return annotated;
}

NonConvergenceError::NonConvergenceError(const std::string& message,
                                         double best_distance, int iterations)
    : Error(ErrorCode::kNonConvergence, message),
      best_distance_(best_distance),
      iterations_(iterations) {}

}  // namespace obbscene
