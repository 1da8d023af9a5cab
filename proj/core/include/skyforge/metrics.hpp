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

#ifndef SKYFORGE_METRICS_HPP_
#define SKYFORGE_METRICS_HPP_

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skyforge/qa_record.hpp"
#include "skyforge/tasks.hpp"
#include "skyforge/types.hpp"

namespace skyforge {

// |a ∩ b| / |a ∪ b| over inclusive pixel grids. Inputs must be normalized.
double Iou(const Box& a, const Box& b);

inline constexpr double kIouHitThreshold = 0.5;

struct BoxScore {
  double miou = 0.0;      // unmatched ground truths count as 0
  double hit_rate = 0.0;  // fraction of ground truths matched at IoU >= 0.5
};

// Greedy one-to-one matching by descending IoU (ties: lower gt index, then
// lower prediction index). Both scores are 0 when `gts` is empty.
BoxScore ScoreBoxes(std::span<const Box> preds, std::span<const Box> gts);

// Fraction of points whose rounded pixel lies in `mask`; 0 for no points.
double ScorePoints(std::span<const Point2> points, const PixelSet& mask);

// Lowercased word tokens; whitespace and ASCII punctuation separate tokens
// and are dropped.
std::vector<std::string> Tokenize(std::string_view text);

// Cumulative BLEU-1..BLEU-max_n with uniform weights and brevity penalty.
// For n >= 2 an order with no matching n-gram uses (0 + 1) / (count + 1).
// max_n must lie in [1, 4].
std::vector<double> Bleu(std::string_view candidate, std::string_view reference,
                         int max_n = 4);

// Multiset token F1 under Tokenize. Two empty texts give 1.
double TokenF1(std::string_view reference, std::string_view candidate);

// Grades open-ended answers on an integer 1-10 scale.
class Judge {
 public:
  virtual ~Judge() = default;
  // Throws JudgeUnavailable or UnparseableJudgeReply.
  virtual int Score(std::string_view question, std::string_view reference,
                    std::string_view candidate) = 0;
};

// round(1 + 9 * TokenF1(reference, candidate)).
int MockJudgeScore(std::string_view reference, std::string_view candidate);

class MockJudge : public Judge {
 public:
  int Score(std::string_view question, std::string_view reference,
            std::string_view candidate) override;
};

// Grading prompt; contains the three inputs verbatim.
std::string JudgePrompt(std::string_view question, std::string_view reference,
                        std::string_view candidate);

// Judge score checked to lie in [1, 10].
int JudgeOpen(std::string_view question, std::string_view reference,
              std::string_view candidate, Judge& judge);

// Relative error bound for distance answers.
inline constexpr double kDistanceTolerance = 0.2;

struct Verdict {
  std::string record_id;
  Task task = Task::kBox;
  double score = 0.0;  // [0, 100]
  bool parse_failure = false;
  bool unscored = false;  // judge unavailable or record still pending
  std::optional<double> hit_rate;  // box records, [0, 100]
  std::optional<double> bleu;      // open records, BLEU-4 in [0, 100]
  std::string detail;
};

// Scores one raw model reply against its record. Parse failures score 0 and
// are flagged. `judge` may be null, in which case open answers without an
// exact rule are left unscored.
Verdict ScoreResponse(const QaRecord& record, std::string_view raw, Judge* judge);

struct TaskScore {
  double score = 0.0;  // mean over scored verdicts, [0, 100]
  std::size_t count = 0;
  std::size_t scored = 0;
  std::size_t parse_failures = 0;
  std::size_t unscored = 0;
  std::optional<double> hit_rate;  // box only
  std::optional<double> bleu;      // open tasks only
};

struct EvalReport {
  std::map<Task, TaskScore> tasks;
  std::map<TaskCategory, double> categories;  // unweighted task means
  double total = 0.0;                         // unweighted mean over tasks
  std::vector<Verdict> verdicts;              // sorted by record id
};

// Throws InvalidArgument when `verdicts` is empty. Tasks whose verdicts are
// all unscored are reported but excluded from the averages.
EvalReport Aggregate(std::span<const Verdict> verdicts);

nlohmann::json ReportToJson(const EvalReport& report);
// Fixed-width table with the 13 task columns, category and total averages.
std::string ReportTable(const EvalReport& report);

}  // namespace skyforge

#endif  // SKYFORGE_METRICS_HPP_
