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

#ifndef OBBSCENE_ERROR_H_
#define OBBSCENE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace obbscene {

enum class ErrorCode {
  kEmptyInput,
  kInsufficientPoints,
  kDegenerateNeighborhood,
  kInvalidDirection,
  kInvalidArgument,
  kNonConvergence,
  kParseError,
  kUnsupportedFormat,
  kIoError,
  kNotImplemented,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for failures that come from numerics rather than from bad input.
bool IsNumericalFailure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

  // Pipeline stage that raised the error, empty outside run_pipeline.
  const std::string& stage() const { return stage_; }
  // The message without the leading error-code name.
  std::string detail() const;

  // Returns a copy whose message is prefixed with the stage name.
  Error WithStage(const std::string& stage) const;

 private:
  ErrorCode code_;
  std::string stage_;
};

// GJK ran out of iterations. Carries the best distance bound reached.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, double best_distance,
                      int iterations);

  double best_distance() const { return best_distance_; }
  int iterations() const { return iterations_; }

 private:
  double best_distance_;
  int iterations_;
};

}  // namespace obbscene

#endif  // OBBSCENE_ERROR_H_
