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

#include "skyforge/answer.hpp"

#include <cctype>
#include <cmath>
#include <nlohmann/json.hpp>
#include <regex>

#include "fmt/format.h"
#include "skyforge/error.hpp"

namespace skyforge {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Body of the first <tag>...</tag>, case-insensitive.
std::optional<std::string> TagBody(std::string_view text, std::string_view tag) {
  const std::string lower = Lower(text);
  const std::string open = fmt::format("<{}>", tag);
  const std::string close = fmt::format("</{}>", tag);
  std::size_t from = 0;
  while (true) {
    const std::size_t b = lower.find(open, from);
    if (b == std::string::npos) return std::nullopt;
    const std::size_t start = b + open.size();
    const std::size_t e = lower.find(close, start);
    if (e == std::string::npos) return std::nullopt;
    return std::string(text.substr(start, e - start));
  }
}

std::vector<double> Numbers(std::string_view body) {
  static const std::regex kNumber(R"(-?\d+(?:\.\d+)?)");
  std::vector<double> out;
  const std::string s(body);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kNumber);
       it != std::sregex_iterator(); ++it) {
    out.push_back(std::stod(it->str()));
  }
  return out;
}

std::string FormatNumber(double v) { return fmt::format("{}", v); }

[[noreturn]] void ParseFail(std::string_view what, std::string_view text) {
  constexpr std::size_t kPreview = 80;
  std::string preview(text.substr(0, kPreview));
  if (text.size() > kPreview) preview += "...";
  Fail(ErrorCode::kParseFailure, fmt::format("{} in '{}'", what, preview));
}

std::optional<char> ChoiceLetter(std::string_view text) {
  static const std::regex kChoiceTag(R"(<choice>\s*\(?([A-Za-z])\)?\s*</choice>)",
                                     std::regex::icase);
  static const std::regex kBoxedBrace(R"(\\boxed\{\s*\(?([A-Za-z])\)?\s*\})");
  static const std::regex kBoxedTag(R"(<boxed>\s*\(?([A-Za-z])\)?\s*</boxed>)",
                                    std::regex::icase);
  const std::string s(text);
  std::smatch m;
  for (const std::regex* re : {&kChoiceTag, &kBoxedBrace, &kBoxedTag}) {
    if (std::regex_search(s, m, *re)) {
      return static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view FeasibilityName(Feasibility f) {
  switch (f) {
    case Feasibility::kSafe: return "safe";
    case Feasibility::kCautious: return "cautious";
    case Feasibility::kUnsafe: return "unsafe";
  }
  return "cautious";
}

char OptionLetter(int index) { return static_cast<char>('A' + index); }

std::string SerializeAnswer(const StructuredAnswer& payload, AnswerFormat format) {
  switch (format) {
    case AnswerFormat::kBoxes: {
      const auto* boxes = std::get_if<std::vector<Box>>(&payload);
      if (boxes == nullptr) break;
      std::string body;
      for (const Box& b : *boxes) {
        if (!body.empty()) body += ',';
        body += fmt::format("[{},{},{},{}]", b.x1, b.y1, b.x2, b.y2);
      }
      return "<box>[" + body + "]</box>";
    }
    case AnswerFormat::kPoints: {
      const auto* points = std::get_if<std::vector<Point2>>(&payload);
      if (points == nullptr) break;
      std::string body;
      for (const Point2& p : *points) {
        if (!body.empty()) body += ',';
        body += "[" + FormatNumber(p.x) + "," + FormatNumber(p.y) + "]";
      }
      return "<point>[" + body + "]</point>";
    }
    case AnswerFormat::kChoice: {
      const auto* choice = std::get_if<Choice>(&payload);
      if (choice == nullptr) break;
      return fmt::format("<choice>{}</choice>", choice->letter);
    }
    case AnswerFormat::kOpen: {
      if (const auto* open = std::get_if<OpenText>(&payload)) return open->text;
      if (const auto* landing = std::get_if<LandingAssessment>(&payload)) {
        nlohmann::json doc{{"feasibility", FeasibilityName(landing->feasibility)},
                           {"confidence", landing->confidence},
                           {"region", landing->region},
                           {"hazards", landing->hazards},
                           {"reasoning", landing->reasoning}};
        return doc.dump();
      }
      break;
    }
  }
  Fail(ErrorCode::kFormatMismatch,
       fmt::format("payload does not match format '{}'", FormatName(format)));
}

StructuredAnswer ParseAnswer(std::string_view text, AnswerFormat expected,
                             int num_options) {
  switch (expected) {
    case AnswerFormat::kBoxes: {
      const auto body = TagBody(text, "box");
      if (!body) ParseFail("no <box> tag", text);
      const std::vector<double> nums = Numbers(*body);
      if (nums.empty() || nums.size() % 4 != 0) {
        ParseFail("box tag must hold groups of 4 numbers", text);
      }
      std::vector<Box> boxes;
      for (std::size_t i = 0; i < nums.size(); i += 4) {
        boxes.push_back(Box{static_cast<int>(std::lround(nums[i])),
                            static_cast<int>(std::lround(nums[i + 1])),
                            static_cast<int>(std::lround(nums[i + 2])),
                            static_cast<int>(std::lround(nums[i + 3]))}
                            .Normalized());
      }
      return boxes;
    }
    case AnswerFormat::kPoints: {
      const auto body = TagBody(text, "point");
      if (!body) ParseFail("no <point> tag", text);
      const std::vector<double> nums = Numbers(*body);
      if (nums.empty() || nums.size() % 2 != 0) {
        ParseFail("point tag must hold pairs of numbers", text);
      }
      std::vector<Point2> points;
      for (std::size_t i = 0; i < nums.size(); i += 2) {
        points.push_back({nums[i], nums[i + 1]});
      }
      return points;
    }
    case AnswerFormat::kChoice: {
      const auto letter = ChoiceLetter(text);
      if (!letter) ParseFail("no choice tag", text);
      if (num_options > 0 && (*letter < 'A' || *letter >= 'A' + num_options)) {
        ParseFail(fmt::format("choice {} outside {} options", *letter, num_options),
                  text);
      }
      return Choice{*letter};
    }
    case AnswerFormat::kOpen:
      return OpenText{Trim(text)};
  }
  ParseFail("unknown format", text);
}

LandingAssessment ParseLandingAssessment(std::string_view text) {
  const auto parse_feasibility = [](std::string_view s) -> std::optional<Feasibility> {
    const std::string l = Lower(s);
    if (l.find("unsafe") != std::string::npos) return Feasibility::kUnsafe;
    if (l.find("cautious") != std::string::npos) return Feasibility::kCautious;
    if (l.find("safe") != std::string::npos) return Feasibility::kSafe;
    return std::nullopt;
  };
  const std::size_t open = text.find('{');
  const std::size_t close = text.rfind('}');
  if (open != std::string_view::npos && close != std::string_view::npos &&
      close > open) {
    const auto doc = nlohmann::json::parse(text.substr(open, close - open + 1),
                                           nullptr, /*allow_exceptions=*/false);
    if (doc.is_object() && doc.contains("feasibility") &&
        doc["feasibility"].is_string()) {
      const auto f = parse_feasibility(doc["feasibility"].get<std::string>());
      if (f) {
        LandingAssessment out;
        out.feasibility = *f;
        if (doc.contains("confidence") && doc["confidence"].is_number()) {
          out.confidence = std::clamp(doc["confidence"].get<double>(), 0.0, 1.0);
        }
        if (doc.contains("region")) {
          out.region = doc["region"].is_string() ? doc["region"].get<std::string>()
                                                 : doc["region"].dump();
        }
        if (doc.contains("hazards") && doc["hazards"].is_array()) {
          for (const auto& h : doc["hazards"]) {
            out.hazards.push_back(h.is_string() ? h.get<std::string>() : h.dump());
          }
        }
        if (doc.contains("reasoning") && doc["reasoning"].is_string()) {
          out.reasoning = doc["reasoning"].get<std::string>();
        }
        return out;
      }
    }
  }
  const auto f = parse_feasibility(text);
  if (!f) ParseFail("no landing feasibility", text);
  LandingAssessment out;
  out.feasibility = *f;
  out.reasoning = Trim(text);
  return out;
}

}  // namespace skyforge
