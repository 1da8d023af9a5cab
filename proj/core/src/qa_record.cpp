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

#include "skyforge/qa_record.hpp"

#include <fstream>

#include "skyforge/error.hpp"

namespace skyforge {
using nlohmann::json;

json RecordToJson(const QaRecord& r) {
  json doc{{"id", r.id},
           {"frame_ids", r.frame_ids},
           {"task", TaskName(r.task)},
           {"question", r.question},
           {"answer_format", FormatName(r.answer_format)},
           {"answer", r.answer},
           {"ground_truth", r.ground_truth},
           {"meta",
            {{"class_ids", r.class_ids},
             {"template_id", r.template_id},
             {"seed", r.seed}}},
           {"status", r.pending ? "pending" : "complete"}};
  if (!r.choices.empty()) doc["choices"] = r.choices;
  if (!r.context.is_null()) doc["context"] = r.context;
  return doc;
}

QaRecord RecordFromJson(const json& doc) {
  QaRecord r;
  try {
    r.id = doc.at("id").get<std::string>();
    r.frame_ids = doc.at("frame_ids").get<std::vector<std::string>>();
    const auto task = TaskFromName(doc.at("task").get<std::string>());
    if (!task) Fail(ErrorCode::kMalformedFile, "record " + r.id + ": unknown task");
    r.task = *task;
    r.question = doc.at("question").get<std::string>();
    const auto format = FormatFromName(doc.at("answer_format").get<std::string>());
    if (!format) {
      Fail(ErrorCode::kMalformedFile, "record " + r.id + ": unknown answer_format");
    }
    r.answer_format = *format;
    r.answer = doc.value("answer", std::string());
    r.ground_truth = doc.value("ground_truth", json::object());
    if (doc.contains("choices")) {
      r.choices = doc.at("choices").get<std::vector<std::string>>();
    }
    if (doc.contains("meta")) {
      const json& meta = doc.at("meta");
      r.class_ids = meta.value("class_ids", std::vector<ClassId>{});
      r.template_id = meta.value("template_id", 0);
      r.seed = meta.value("seed", std::uint64_t{0});
    }
    r.pending = doc.value("status", std::string("complete")) == "pending";
    if (doc.contains("context")) r.context = doc.at("context");
  } catch (const json::exception& e) {
    Fail(ErrorCode::kMalformedFile, std::string("record schema: ") + e.what());
  }
  if (r.frame_ids.empty()) {
    Fail(ErrorCode::kMalformedFile, "record " + r.id + " has no frame_ids");
  }
  return r;
}

std::string RecordLine(const QaRecord& record) {
  return RecordToJson(record).dump();
}

std::vector<QaRecord> ReadRecords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingFile, "cannot open " + path.string());
  std::vector<QaRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      Fail(ErrorCode::kMalformedFile, path.string() + ":" +
                                          std::to_string(line_no) + ": " + e.what());
    }
    records.push_back(RecordFromJson(doc));
  }
  return records;
}

void WriteRecords(const std::filesystem::path& path,
                  const std::vector<QaRecord>& records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  for (const QaRecord& r : records) out << RecordLine(r) << '\n';
}

json RunsToJson(const PixelSet& set) {
  json runs = json::array();
  for (const PixelRun& run : ToRuns(set)) {
    runs.push_back({run.y, run.x_begin, run.x_end});
  }
  return runs;
}

PixelSet RunsFromJson(const json& runs) {
  std::vector<PixelRun> parsed;
  for (const json& run : runs) {
    if (!run.is_array() || run.size() != 3) {
      Fail(ErrorCode::kMalformedFile, "mask run must be [y, x_begin, x_end]");
    }
    parsed.push_back({run[0].get<int>(), run[1].get<int>(), run[2].get<int>()});
  }
  return FromRuns(parsed);
}

}  // namespace skyforge
