// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIFTLAB_ERRORS_HPP_
#define LIFTLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace liftlab {

// Every failure the library can signal. Validation failures (bad input data)
// and structural failures (empty polytope, infeasible target) share one
// exception type so callers can branch on the code.
enum class ErrorCode {
  kNegativeEntry,
  kSumOutOfTolerance,
  kEmptySupport,
  kLabelMismatch,
  kAlphaOutOfRange,
  kZeroLift,
  kEmptySubset,
  kMalformedR,
  kEmptyPolytope,
  kInfeasibleTarget,
  kCapExceeded,
  kParseError,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace liftlab

#endif  // LIFTLAB_ERRORS_HPP_
