// Copyright 2026 The nme-sc Authors.
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

#ifndef NMESC_ERROR_H_
#define NMESC_ERROR_H_

#include <stdexcept>
#include <string>

namespace nmesc {

enum class ErrorCode {
  kInvalidArgument,
  kNonFinite,
  kNotSymmetric,
  kNoConvergence,
  kInvalidK,
  kZeroNorm,
  kInvalidSigma,
  kInvalidP,
  kWrongState,
  kIsolatedNode,
  kTooFewEigenvalues,
  kInputTooSmall,
  kParseError,
  kDimensionMismatch,
  kEmptyInput,
  kEmptyReference,
  kLengthMismatch,
  kInfeasibleSpec,
  kIoError,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above. The
// what() string is "<CodeName>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nmesc

#endif  // NMESC_ERROR_H_
