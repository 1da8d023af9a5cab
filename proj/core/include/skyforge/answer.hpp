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

#ifndef SKYFORGE_ANSWER_HPP_
#define SKYFORGE_ANSWER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skyforge/tasks.hpp"
#include "skyforge/types.hpp"

namespace skyforge {

struct Choice {
  char letter = 'A';  // upper case

  friend bool operator==(const Choice&, const Choice&) = default;
};

struct OpenText {
  std::string text;

  friend bool operator==(const OpenText&, const OpenText&) = default;
};

enum class Feasibility { kSafe, kCautious, kUnsafe };

std::string_view FeasibilityName(Feasibility f);

struct LandingAssessment {
  Feasibility feasibility = Feasibility::kCautious;
  double confidence = 0.0;  // [0, 1]
  std::string region;
  std::vector<std::string> hazards;
  std::string reasoning;
};

using StructuredAnswer = std::variant<std::vector<Box>, std::vector<Point2>,
                                      Choice, OpenText, LandingAssessment>;

// boxes  -> <box>[[x1,y1,x2,y2],...]</box>
// points -> <point>[[x,y],...]</point>
// choice -> <choice>B</choice>
// open   -> raw text
// Throws FormatMismatch when the payload alternative does not match.
std::string SerializeAnswer(const StructuredAnswer& payload, AnswerFormat format);

// Extracts the first well-formed tag of the expected kind, ignoring any
// surrounding prose. Box corners are normalised; coordinates round to the
// nearest pixel. Choice answers are also accepted inside \boxed{...} or
// <boxed>...</boxed>. `num_options` > 0 bounds the accepted letters.
// Throws ParseFailure.
StructuredAnswer ParseAnswer(std::string_view text, AnswerFormat expected,
                             int num_options = 0);

// JSON object {"feasibility", "confidence", "region", "hazards", "reasoning"}
// anywhere in the text, or failing that a bare safe/cautious/unsafe keyword.
// Throws ParseFailure.
LandingAssessment ParseLandingAssessment(std::string_view text);

char OptionLetter(int index);

}  // namespace skyforge

#endif  // SKYFORGE_ANSWER_HPP_
