// Copyright 2026 The entsrc Authors
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

#include "entsrc/error.hpp"

namespace entsrc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kTraceNotOne: return "TraceNotOne";
    case ErrorCode::kNotPsd: return "NotPSD";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kInvalidSimplexPoint: return "InvalidSimplexPoint";
    case ErrorCode::kInvalidGridSize: return "InvalidGridSize";
    case ErrorCode::kEmptySetting: return "EmptySetting";
    case ErrorCode::kAllStatesExcluded: return "AllStatesExcluded";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidCount: return "InvalidCount";
    case ErrorCode::kUnknownStateFamily: return "UnknownStateFamily";
    case ErrorCode::kIoFailure: return "IOFailure";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kMissingSetting: return "MissingSetting";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

}  // namespace entsrc
