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

#include "skyforge/tasks.hpp"

namespace skyforge {

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kBox: return "box";
    case Task::kColor: return "color";
    case Task::kDistance: return "distance";
    case Task::kHeight: return "height";
    case Task::kPoint: return "point";
    case Task::kReversePoint: return "reverse_point";
    case Task::kFreespace: return "freespace";
    case Task::kRelation: return "relation";
    case Task::kCaptionSingle: return "caption_single";
    case Task::kCaptionMulti: return "caption_multi";
    case Task::kCounting: return "counting";
    case Task::kFunction: return "function";
    case Task::kLanding: return "landing";
  }
  return "";
}

std::optional<Task> TaskFromName(std::string_view name) {
  for (Task t : kAllTasks) {
    if (TaskName(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view TaskColumn(Task task) {
  switch (task) {
    case Task::kBox: return "Box";
    case Task::kColor: return "Color";
    case Task::kDistance: return "Dist.";
    case Task::kHeight: return "Height";
    case Task::kPoint: return "Point";
    case Task::kReversePoint: return "Rev.";
    case Task::kFreespace: return "Free.";
    case Task::kRelation: return "Sp. Rel.";
    case Task::kCaptionSingle: return "Single";
    case Task::kCaptionMulti: return "Multi";
    case Task::kCounting: return "Cou.";
    case Task::kFunction: return "Fun.";
    case Task::kLanding: return "Land.";
  }
  return "";
}

TaskCategory CategoryOf(Task task) {
  return static_cast<int>(task) <= static_cast<int>(Task::kRelation)
             ? TaskCategory::kEnvironmentalPerception
             : TaskCategory::kSceneUnderstanding;
}

std::string_view CategoryName(TaskCategory category) {
  return category == TaskCategory::kEnvironmentalPerception
             ? "environmental_perception"
             : "scene_understanding";
}

AnswerFormat FormatOf(Task task) {
  switch (task) {
    case Task::kBox: return AnswerFormat::kBoxes;
    case Task::kPoint:
    case Task::kFreespace: return AnswerFormat::kPoints;
    case Task::kColor:
    case Task::kRelation:
    case Task::kCounting: return AnswerFormat::kChoice;
    default: return AnswerFormat::kOpen;
  }
}

std::string_view FormatName(AnswerFormat format) {
  switch (format) {
    case AnswerFormat::kBoxes: return "boxes";
    case AnswerFormat::kPoints: return "points";
    case AnswerFormat::kChoice: return "choice";
    case AnswerFormat::kOpen: return "open";
  }
  return "";
}

std::optional<AnswerFormat> FormatFromName(std::string_view name) {
  for (AnswerFormat f : {AnswerFormat::kBoxes, AnswerFormat::kPoints,
                         AnswerFormat::kChoice, AnswerFormat::kOpen}) {
    if (FormatName(f) == name) return f;
  }
  return std::nullopt;
}

}  // namespace skyforge
