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

#include "skyforge/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <tuple>

#include "fmt/format.h"
#include "skyforge/answer.hpp"
#include "skyforge/error.hpp"

namespace skyforge {
using nlohmann::json;

double Iou(const Box& a, const Box& b) {
  const std::int64_t iw =
      std::max<std::int64_t>(0, std::int64_t{std::min(a.x2, b.x2)} - std::max(a.x1, b.x1) + 1);
  const std::int64_t ih =
      std::max<std::int64_t>(0, std::int64_t{std::min(a.y2, b.y2)} - std::max(a.y1, b.y1) + 1);
  const std::int64_t inter = iw * ih;
  const std::int64_t uni = a.Area() + b.Area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

BoxScore ScoreBoxes(std::span<const Box> preds, std::span<const Box> gts) {
  BoxScore out;
  if (gts.empty()) return out;
  struct Pair {
    double iou;
    std::size_t gt, pred;
  };
  std::vector<Pair> pairs;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    for (std::size_t p = 0; p < preds.size(); ++p) {
      const double v = Iou(preds[p].Normalized(), gts[g].Normalized());
      if (v > 0.0) pairs.push_back({v, g, p});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    return std::tie(a.gt, a.pred) < std::tie(b.gt, b.pred);
  });
  std::vector<bool> gt_used(gts.size()), pred_used(preds.size());
  double sum = 0.0;
  std::size_t hits = 0;
  for (const Pair& p : pairs) {
    if (gt_used[p.gt] || pred_used[p.pred]) continue;
    gt_used[p.gt] = pred_used[p.pred] = true;
    sum += p.iou;
    if (p.iou >= kIouHitThreshold) ++hits;
  }
  const auto n = static_cast<double>(gts.size());
  out.miou = sum / n;
  out.hit_rate = static_cast<double>(hits) / n;
  return out;
}

double ScorePoints(std::span<const Point2> points, const PixelSet& mask) {
  if (points.empty()) return 0.0;
  std::size_t inside = 0;
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    const Pixel px{static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
    if (mask.Contains(px)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(points.size());
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || std::ispunct(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts CountNgrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::map<std::string, std::size_t> Bag(const std::vector<std::string>& tokens) {
  std::map<std::string, std::size_t> bag;
  for (const std::string& t : tokens) ++bag[t];
  return bag;
}

}  // namespace

std::vector<double> Bleu(std::string_view candidate, std::string_view reference,
                         int max_n) {
  if (max_n < 1 || max_n > 4) {
    Fail(ErrorCode::kInvalidArgument, fmt::format("max_n must be in [1, 4], got {}", max_n));
  }
  const std::vector<std::string> cand = Tokenize(candidate);
  const std::vector<std::string> ref = Tokenize(reference);
  std::vector<double> out(static_cast<std::size_t>(max_n), 0.0);
  if (cand.empty() || ref.empty()) return out;

  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);

  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const NgramCounts cand_counts = CountNgrams(cand, static_cast<std::size_t>(n));
    const NgramCounts ref_counts = CountNgrams(ref, static_cast<std::size_t>(n));
    std::size_t matches = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matches += std::min(count, it->second);
    }
    double precision;
    if (matches == 0) {
      if (n == 1) return out;  // no unigram overlap: every order is 0
      precision = 1.0 / static_cast<double>(total + 1);
    } else {
      precision = static_cast<double>(matches) / static_cast<double>(total);
    }
    log_sum += std::log(precision);
    out[static_cast<std::size_t>(n - 1)] = bp * std::exp(log_sum / n);
  }
  return out;
}

double TokenF1(std::string_view reference, std::string_view candidate) {
  const auto ref = Bag(Tokenize(reference));
  const auto cand = Bag(Tokenize(candidate));
  std::size_t ref_n = 0, cand_n = 0, common = 0;
  for (const auto& [t, n] : ref) ref_n += n;
  for (const auto& [t, n] : cand) {
    cand_n += n;
    auto it = ref.find(t);
    if (it != ref.end()) common += std::min(n, it->second);
  }
  if (ref_n == 0 && cand_n == 0) return 1.0;
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(cand_n);
  const double recall = static_cast<double>(common) / static_cast<double>(ref_n);
  return 2.0 * precision * recall / (precision + recall);
}

int MockJudgeScore(std::string_view reference, std::string_view candidate) {
  const double f1 = TokenF1(reference, candidate);
  return std::clamp(static_cast<int>(std::lround(1.0 + 9.0 * f1)), 1, 10);
}

int MockJudge::Score(std::string_view, std::string_view reference,
                     std::string_view candidate) {
  return MockJudgeScore(reference, candidate);
}

std::string JudgePrompt(std::string_view question, std::string_view reference,
                        std::string_view candidate) {
  return fmt::format(
      "You are grading an answer to a question about a UAV aerial image.\n"
      "Compare the candidate answer with the reference answer and give a score "
      "from 1 to 10 based on factual correctness, semantic completeness, and "
      "reasoning quality.\n\n"
      "Question:\n{}\n\nReference answer:\n{}\n\nCandidate answer:\n{}\n\n"
      "Reply with the integer score only.",
      question, reference, candidate);
}

int JudgeOpen(std::string_view question, std::string_view reference,
              std::string_view candidate, Judge& judge) {
  const int score = judge.Score(question, reference, candidate);
  if (score < 1 || score > 10) {
    Fail(ErrorCode::kUnparseableJudgeReply,
         fmt::format("judge score {} outside [1, 10]", score));
  }
  return score;
}

namespace {

std::string Normalize(std::string_view text) {
  std::string out;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    out.push_back(ch == '_' ? ' ' : static_cast<char>(std::tolower(c)));
  }
  return out;
}

// Position of `word` in `text` on word boundaries, npos if absent.
std::size_t FindWord(const std::string& text, const std::string& word) {
  if (word.empty()) return std::string::npos;
  for (std::size_t pos = text.find(word); pos != std::string::npos;
       pos = text.find(word, pos + 1)) {
    const bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
    const std::size_t end = pos + word.size();
    bool right_ok = end == text.size() || !std::isalnum(static_cast<unsigned char>(text[end]));
    // Accept a trailing plural "s".
    if (!right_ok && text[end] == 's' &&
        (end + 1 == text.size() || !std::isalnum(static_cast<unsigned char>(text[end + 1])))) {
      right_ok = true;
    }
    if (left_ok && right_ok) return pos;
  }
  return std::string::npos;
}

std::optional<double> FirstNumber(std::string_view text) {
  static const std::regex kNumber(R"(-?\d+(?:\.\d+)?)");
  std::cmatch m;
  if (!std::regex_search(text.data(), text.data() + text.size(), m, kNumber)) {
    return std::nullopt;
  }
  return std::stod(m.str());
}

std::string ReferenceText(const QaRecord& record) {
  if (record.ground_truth.contains("text") && record.ground_truth["text"].is_string()) {
    return record.ground_truth["text"].get<std::string>();
  }
  return record.answer;
}

void JudgeFallback(const QaRecord& record, std::string_view raw, Judge* judge,
                   Verdict& v) {
  if (judge == nullptr) {
    v.unscored = true;
    v.detail = "no judge configured";
    return;
  }
  try {
    v.score = 10.0 * JudgeOpen(record.question, ReferenceText(record), raw, *judge);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kJudgeUnavailable &&
        e.code() != ErrorCode::kUnparseableJudgeReply) {
      throw;
    }
    v.unscored = true;
    v.detail = e.what();
  }
}

std::vector<Box> BoxesFromJson(const json& arr) {
  std::vector<Box> boxes;
  for (const json& b : arr) {
    boxes.push_back(Box{b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                        b.at(3).get<int>()}
                        .Normalized());
  }
  return boxes;
}

void ScoreChoice(const QaRecord& record, std::string_view raw, Verdict& v) {
  const auto parsed = std::get<Choice>(ParseAnswer(
      raw, AnswerFormat::kChoice, static_cast<int>(record.choices.size())));
  const std::string gt = record.ground_truth.at("choice").get<std::string>();
  const bool ok = !gt.empty() && std::toupper(static_cast<unsigned char>(parsed.letter)) ==
                                     std::toupper(static_cast<unsigned char>(gt[0]));
  v.score = ok ? 100.0 : 0.0;
}

void ScoreDistance(const QaRecord& record, std::string_view raw, Judge* judge,
                   Verdict& v) {
  const double gt = record.ground_truth.at("value").get<double>();
  if (auto value = FirstNumber(raw)) {
    if (std::abs(*value - gt) <= kDistanceTolerance * std::abs(gt)) {
      v.score = 100.0;
      return;
    }
  }
  JudgeFallback(record, raw, judge, v);
}

bool HeightCorrect(const QaRecord& record, std::string_view raw) {
  const std::string text = Normalize(raw);
  const std::string verdict = record.ground_truth.at("verdict").get<std::string>();
  if (verdict == "comparable") {
    for (const char* word : {"same", "similar", "comparable", "equal"}) {
      if (FindWord(text, word) != std::string::npos) return true;
    }
    return false;
  }
  const auto& names = record.ground_truth.at("names");
  const std::string right = Normalize(record.ground_truth.at("answer_name").get<std::string>());
  std::string wrong = Normalize(names.at(0).get<std::string>());
  if (wrong == right) wrong = Normalize(names.at(1).get<std::string>());
  const std::size_t pr = FindWord(text, right);
  if (pr == std::string::npos) return false;
  const std::size_t pw = FindWord(text, wrong);
  return pw == std::string::npos || pr < pw;
}

}  // namespace

Verdict ScoreResponse(const QaRecord& record, std::string_view raw, Judge* judge) {
  Verdict v;
  v.record_id = record.id;
  v.task = record.task;
  if (record.pending) {
    v.unscored = true;
    v.detail = "record has no reference answer yet";
    return v;
  }
  try {
    switch (record.task) {
      case Task::kBox: {
        const auto preds = std::get<std::vector<Box>>(ParseAnswer(raw, AnswerFormat::kBoxes));
        const BoxScore s = ScoreBoxes(preds, BoxesFromJson(record.ground_truth.at("boxes")));
        v.score = 100.0 * s.miou;
        v.hit_rate = 100.0 * s.hit_rate;
        break;
      }
      case Task::kPoint:
      case Task::kFreespace: {
        const auto preds =
            std::get<std::vector<Point2>>(ParseAnswer(raw, AnswerFormat::kPoints));
        v.score = 100.0 * ScorePoints(preds, RunsFromJson(record.ground_truth.at("mask_runs")));
        break;
      }
      case Task::kColor:
      case Task::kRelation:
      case Task::kCounting:
        ScoreChoice(record, raw, v);
        break;
      case Task::kReversePoint: {
        const std::string name =
            Normalize(record.ground_truth.at("class_name").get<std::string>());
        v.score = FindWord(Normalize(raw), name) != std::string::npos ? 100.0 : 0.0;
        break;
      }
      case Task::kDistance:
        ScoreDistance(record, raw, judge, v);
        break;
      case Task::kHeight:
        if (HeightCorrect(record, raw)) {
          v.score = 100.0;
        } else {
          JudgeFallback(record, raw, judge, v);
        }
        break;
      case Task::kCaptionSingle:
      case Task::kCaptionMulti:
      case Task::kFunction:
      case Task::kLanding:
        v.bleu = 100.0 * Bleu(raw, ReferenceText(record), 4).back();
        JudgeFallback(record, raw, judge, v);
        break;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseFailure) throw;
    v.score = 0.0;
    v.parse_failure = true;
    v.detail = e.what();
  }
  return v;
}

namespace {

// Summation in sorted order so the result does not depend on input order.
double SortedMean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double x : values) sum += x;
  return sum / static_cast<double>(values.size());
}

}  // namespace

EvalReport Aggregate(std::span<const Verdict> verdicts) {
  if (verdicts.empty()) Fail(ErrorCode::kInvalidArgument, "no verdicts to aggregate");
  EvalReport report;
  report.verdicts.assign(verdicts.begin(), verdicts.end());
  std::sort(report.verdicts.begin(), report.verdicts.end(),
            [](const Verdict& a, const Verdict& b) { return a.record_id < b.record_id; });

  std::map<Task, std::vector<double>> scores, hits, bleus;
  for (const Verdict& v : report.verdicts) {
    TaskScore& ts = report.tasks[v.task];
    ++ts.count;
    if (v.parse_failure) ++ts.parse_failures;
    if (v.bleu) bleus[v.task].push_back(*v.bleu);
    if (v.unscored) {
      ++ts.unscored;
      continue;
    }
    ++ts.scored;
    scores[v.task].push_back(v.score);
    if (v.hit_rate) hits[v.task].push_back(*v.hit_rate);
  }
  std::map<TaskCategory, std::vector<double>> by_category;
  std::vector<double> all;
  for (auto& [task, ts] : report.tasks) {
    if (auto it = hits.find(task); it != hits.end()) ts.hit_rate = SortedMean(it->second);
    if (auto it = bleus.find(task); it != bleus.end()) ts.bleu = SortedMean(it->second);
    auto it = scores.find(task);
    if (it == scores.end()) continue;
    ts.score = SortedMean(it->second);
    by_category[CategoryOf(task)].push_back(ts.score);
    all.push_back(ts.score);
  }
  for (auto& [category, values] : by_category) {
    report.categories[category] = SortedMean(values);
  }
  report.total = all.empty() ? 0.0 : SortedMean(all);
  return report;
}

json ReportToJson(const EvalReport& report) {
  json columns = json::array();
  for (Task task : kAllTasks) {
    auto it = report.tasks.find(task);
    if (it == report.tasks.end()) continue;
    const TaskScore& ts = it->second;
    json col = {{"task", TaskName(task)},
                {"column", TaskColumn(task)},
                {"category", CategoryName(CategoryOf(task))},
                {"score", ts.score},
                {"count", ts.count},
                {"scored", ts.scored},
                {"parse_failures", ts.parse_failures},
                {"unscored", ts.unscored}};
    if (ts.hit_rate) col["hit_rate"] = *ts.hit_rate;
    if (ts.bleu) col["bleu4"] = *ts.bleu;
    columns.push_back(std::move(col));
  }
  json categories = json::object();
  for (const auto& [category, value] : report.categories) {
    categories[std::string(CategoryName(category))] = value;
  }
  json verdicts = json::array();
  for (const Verdict& v : report.verdicts) {
    json jv = {{"record_id", v.record_id},
               {"task", TaskName(v.task)},
               {"score", v.score},
               {"parse_failure", v.parse_failure},
               {"unscored", v.unscored}};
    if (v.hit_rate) jv["hit_rate"] = *v.hit_rate;
    if (v.bleu) jv["bleu4"] = *v.bleu;
    if (!v.detail.empty()) jv["detail"] = v.detail;
    verdicts.push_back(std::move(jv));
  }
  return {{"columns", columns},
          {"categories", categories},
          {"average", report.total},
          {"verdicts", verdicts}};
}

std::string ReportTable(const EvalReport& report) {
  std::string header, row;
  auto cell = [](std::string& line, std::string_view text) {
    line += fmt::format("{:>9}", text);
  };
  for (Task task : kAllTasks) {
    cell(header, TaskColumn(task));
    auto it = report.tasks.find(task);
    cell(row, it == report.tasks.end() || it->second.scored == 0
                  ? std::string("-")
                  : fmt::format("{:.2f}", it->second.score));
  }
  for (TaskCategory category :
       {TaskCategory::kEnvironmentalPerception, TaskCategory::kSceneUnderstanding}) {
    cell(header, category == TaskCategory::kEnvironmentalPerception ? "EP Avg." : "SU Avg.");
    auto it = report.categories.find(category);
    cell(row, it == report.categories.end() ? std::string("-")
                                            : fmt::format("{:.2f}", it->second));
  }
  cell(header, "Avg.");
  cell(row, fmt::format("{:.2f}", report.total));
  std::string out = header + "\n" + row + "\n";
  std::size_t failures = 0, unscored = 0;
  for (const auto& [task, ts] : report.tasks) {
    failures += ts.parse_failures;
    unscored += ts.unscored;
  }
  out += fmt::format("records: {}  parse failures: {}  unscored: {}\n",
                     report.verdicts.size(), failures, unscored);
  if (auto it = report.tasks.find(Task::kBox); it != report.tasks.end() && it->second.hit_rate) {
    out += fmt::format("box hit rate (IoU >= 0.5): {:.2f}\n", *it->second.hit_rate);
  }
  return out;
}

}  // namespace skyforge
