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

#include "nmesc/error.h"

namespace nmesc {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kZeroNorm: return "ZeroNorm";
    case ErrorCode::kInvalidSigma: return "InvalidSigma";
    case ErrorCode::kInvalidP: return "InvalidP";
    case ErrorCode::kWrongState: return "WrongState";
    case ErrorCode::kIsolatedNode: return "IsolatedNode";
    case ErrorCode::kTooFewEigenvalues: return "TooFewEigenvalues";
    case ErrorCode::kInputTooSmall: return "InputTooSmall";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace nmesc
