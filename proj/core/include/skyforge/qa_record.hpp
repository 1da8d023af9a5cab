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

#ifndef SKYFORGE_QA_RECORD_HPP_
#define SKYFORGE_QA_RECORD_HPP_

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "skyforge/tasks.hpp"
#include "skyforge/types.hpp"

namespace skyforge {

// One generated question. JSON-lines schema (keys sorted on output):
//   id            string, unique within a dataset
//   frame_ids     [string]; more than one only for caption_multi
//   task          one of the 13 task names
//   question      prompt text shown to the model (options inlined for choice)
//   answer_format boxes | points | choice | open
//   answer        ground truth serialized exactly as a perfect model would reply
//   ground_truth  task-specific payload (see qa_generation.hpp)
//   choices       [string], present for choice records
//   meta          {"class_ids": [int], "template_id": int, "seed": uint}
//   status        "complete" or "pending" (awaiting a model-written answer)
//   context       generation context for caption/landing/function records
struct QaRecord {
  std::string id;
  std::vector<std::string> frame_ids;
  Task task = Task::kBox;
  std::string question;
  AnswerFormat answer_format = AnswerFormat::kOpen;
  std::string answer;
  nlohmann::json ground_truth = nlohmann::json::object();
  std::vector<std::string> choices;
  std::vector<ClassId> class_ids;
  int template_id = 0;
  std::uint64_t seed = 0;
  bool pending = false;
  nlohmann::json context;  // null when absent
};

nlohmann::json RecordToJson(const QaRecord& record);
// Throws MalformedFile on schema violations.
QaRecord RecordFromJson(const nlohmann::json& doc);

std::string RecordLine(const QaRecord& record);

std::vector<QaRecord> ReadRecords(const std::filesystem::path& path);
void WriteRecords(const std::filesystem::path& path,
                  const std::vector<QaRecord>& records);

// Helpers for the pixel-run encoding used by point-style ground truths.
nlohmann::json RunsToJson(const PixelSet& set);
PixelSet RunsFromJson(const nlohmann::json& runs);

}  // namespace skyforge

#endif  // SKYFORGE_QA_RECORD_HPP_
