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

#ifndef SKYFORGE_TASKS_HPP_
#define SKYFORGE_TASKS_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace skyforge {

// The 13 benchmark tasks in report-column order.
enum class Task {
  kBox = 0,
  kColor,
  kDistance,
  kHeight,
  kPoint,
  kReversePoint,
  kFreespace,
  kRelation,
  kCaptionSingle,
  kCaptionMulti,
  kCounting,
  kFunction,
  kLanding,
};
inline constexpr int kTaskCount = 13;

inline constexpr std::array<Task, kTaskCount> kAllTasks = {
    Task::kBox,      Task::kColor,        Task::kDistance,     Task::kHeight,
    Task::kPoint,    Task::kReversePoint, Task::kFreespace,    Task::kRelation,
    Task::kCaptionSingle, Task::kCaptionMulti, Task::kCounting, Task::kFunction,
    Task::kLanding};

enum class TaskCategory { kEnvironmentalPerception, kSceneUnderstanding };

enum class AnswerFormat { kBoxes, kPoints, kChoice, kOpen };

std::string_view TaskName(Task task);
std::optional<Task> TaskFromName(std::string_view name);
// Short column header ("Box", "Dist.", "Sp. Rel.", ...).
std::string_view TaskColumn(Task task);
TaskCategory CategoryOf(Task task);
std::string_view CategoryName(TaskCategory category);
AnswerFormat FormatOf(Task task);

std::string_view FormatName(AnswerFormat format);
std::optional<AnswerFormat> FormatFromName(std::string_view name);

}  // namespace skyforge

#endif  // SKYFORGE_TASKS_HPP_
