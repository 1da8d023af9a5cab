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

#ifndef SKYFORGE_EVALUATION_HPP_
#define SKYFORGE_EVALUATION_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skyforge/metrics.hpp"
#include "skyforge/model_client.hpp"
#include "skyforge/qa_record.hpp"

namespace skyforge {

struct Prediction {
  std::string record_id;
  std::string raw_text;
  std::string error;  // non-empty when the model call failed
};

// JSON lines {"record_id", "raw_text"} (+ "error" when set).
std::vector<Prediction> ReadPredictions(const std::filesystem::path& path);
void WritePredictions(const std::filesystem::path& path,
                      std::span<const Prediction> predictions);

struct EvaluationOptions {
  int concurrency = 1;
  std::string model;
  std::string system_prompt;
  // Image payloads (data URLs) for a frame id; unset sends text only.
  std::function<std::vector<std::string>(const std::string& frame_id)> images;
};

// Runs fn(0..n-1) on up to `workers` threads. The first exception thrown is
// rethrown after all workers stop.
void ParallelFor(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// One model call per record, results in record order. Transport failures are
// kept as Prediction::error; AuthError aborts the run.
std::vector<Prediction> CollectPredictions(std::span<const QaRecord> records,
                                           ChatModel& model,
                                           const EvaluationOptions& options);

// Joins predictions to records by id. Records without a usable prediction
// are unscored. `judge` may be null.
std::vector<Verdict> ScorePredictions(std::span<const QaRecord> records,
                                      std::span<const Prediction> predictions,
                                      Judge* judge, int concurrency = 1);

// Asks `model` to write the reference answer of every pending record and
// marks it complete. Records whose call fails stay pending; the count of
// completed records is returned.
std::size_t CompletePending(std::vector<QaRecord>& records, ChatModel& model,
                            const EvaluationOptions& options);

}  // namespace skyforge

#endif  // SKYFORGE_EVALUATION_HPP_
