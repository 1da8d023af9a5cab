// Copyright 2026 The Skyforge Authors
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

#include "skyforge/error.hpp"

namespace skyforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnknownClassId: return "UnknownClassId";
    case ErrorCode::kMalformedMatrix: return "MalformedMatrix";
    case ErrorCode::kMalformedFile: return "MalformedFile";
    case ErrorCode::kMissingModality: return "MissingModality";
    case ErrorCode::kInsufficientArea: return "InsufficientArea";
    case ErrorCode::kNoBackgroundClass: return "NoBackgroundClass";
    case ErrorCode::kDegenerateCentroids: return "DegenerateCentroids";
    case ErrorCode::kNoLidarCoverage: return "NoLidarCoverage";
    case ErrorCode::kNothingToAsk: return "NothingToAsk";
    case ErrorCode::kMissingFunctionTable: return "MissingFunctionTable";
    case ErrorCode::kFormatMismatch: return "FormatMismatch";
    case ErrorCode::kInsufficientRecords: return "InsufficientRecords";
    case ErrorCode::kOverlappingPlacements: return "OverlappingPlacementsNotAllowed";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kJudgeUnavailable: return "JudgeUnavailable";
    case ErrorCode::kUnparseableJudgeReply: return "UnparseableJudgeReply";
    case ErrorCode::kEmptyAnswerSpan: return "EmptyAnswerSpan";
    case ErrorCode::kEmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kDegenerateGroup: return "DegenerateGroup";
    case ErrorCode::kAuthError: return "AuthError";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace skyforge
