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

#ifndef SKYFORGE_TEMPLATES_HPP_
#define SKYFORGE_TEMPLATES_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skyforge/tasks.hpp"

namespace skyforge {

inline constexpr std::size_t kMinTemplatesPerTask = 20;

// Question templates with {slot} placeholders. Slots per task:
//   box, point, counting          {class}
//   color, distance               {object}
//   height, relation              {object_a} {object_b}
//   reverse_point, function       {x} {y}
//   caption_multi                 {count}
//   freespace, caption_single, landing   none
class TemplateBank {
 public:
  static const TemplateBank& Default();

  std::span<const std::string_view> For(Task task) const;
  std::span<const std::string_view> RequiredSlots(Task task) const;

 private:
  TemplateBank() = default;
};

using SlotValues = std::map<std::string, std::string, std::less<>>;

// Replaces every {name}. Throws InvalidArgument on a missing slot value or an
// unterminated brace.
std::string RenderTemplate(std::string_view tmpl, const SlotValues& slots);

// Slot names referenced by a template, in order of first appearance.
std::vector<std::string> TemplateSlots(std::string_view tmpl);

}  // namespace skyforge

#endif  // SKYFORGE_TEMPLATES_HPP_
