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

#ifndef SKYFORGE_ERROR_HPP_
#define SKYFORGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace skyforge {

enum class ErrorCode {
  kInvalidArgument,
  // Scene loading.
  kMissingFile,
  kDimensionMismatch,
  kUnknownClassId,
  kMalformedMatrix,
  kMalformedFile,
  kMissingModality,
  // Geometry and projection.
  kInsufficientArea,
  kNoBackgroundClass,
  kDegenerateCentroids,
  kNoLidarCoverage,
  // Generation and curation.
  kNothingToAsk,
  kMissingFunctionTable,
  kFormatMismatch,
  kInsufficientRecords,
  kOverlappingPlacements,
  // Scoring.
  kParseFailure,
  kJudgeUnavailable,
  kUnparseableJudgeReply,
  // Rewards.
  kEmptyAnswerSpan,
  kEmptyGroundTruth,
  kEmptyBatch,
  kDegenerateGroup,
  // Endpoint.
  kAuthError,
  kRateLimited,
  kTimeout,
  kMalformedResponse,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace skyforge

#endif  // SKYFORGE_ERROR_HPP_
