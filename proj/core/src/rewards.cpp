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

#include "skyforge/rewards.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "fmt/format.h"
#include "skyforge/error.hpp"
#include "skyforge/metrics.hpp"

namespace skyforge {

double SftLoss(std::span<const double> token_logprobs, std::size_t answer_start) {
  if (answer_start < 1) {
    Fail(ErrorCode::kInvalidArgument, "answer start index is 1-based");
  }
  if (answer_start > token_logprobs.size()) {
    Fail(ErrorCode::kEmptyAnswerSpan,
         fmt::format("answer starts at token {} of {}", answer_start, token_logprobs.size()));
  }
  double sum = 0.0;
  for (std::size_t i = answer_start - 1; i < token_logprobs.size(); ++i) {
    const double lp = token_logprobs[i];
    if (!(lp <= 0.0)) {
      Fail(ErrorCode::kInvalidArgument, fmt::format("log-probability {} at token {}", lp, i + 1));
    }
    sum += lp;
  }
  return -sum / static_cast<double>(token_logprobs.size() - answer_start + 1);
}

double PointReward(std::span<const Point2> preds, std::span<const Point2> gts,
                   double radius) {
  if (gts.empty()) Fail(ErrorCode::kEmptyGroundTruth, "point reward needs ground truth");
  if (preds.empty()) return 0.0;
  std::size_t hits = 0;
  for (const Point2& p : preds) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& g : gts) {
      best = std::min(best, std::abs(p.x - g.x) + std::abs(p.y - g.y));
    }
    if (best <= radius) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double ChoiceReward(char pred, char gt) {
  return std::toupper(static_cast<unsigned char>(pred)) ==
                 std::toupper(static_cast<unsigned char>(gt))
             ? 1.0
             : 0.0;
}

double BoxReward(const Box& pred, const Box& gt) { return Iou(pred, gt); }

namespace {

void CheckBatch(std::span<const GrpoSample> batch, double beta) {
  if (batch.empty()) Fail(ErrorCode::kEmptyBatch, "GRPO batch is empty");
  if (!(beta >= 0.0)) Fail(ErrorCode::kInvalidArgument, "beta must be non-negative");
}

}  // namespace

double GrpoLoss(std::span<const GrpoSample> batch, double beta) {
  CheckBatch(batch, beta);
  double weighted = 0.0;
  double kl = 0.0;
  for (const GrpoSample& s : batch) {
    const double ratio = s.logp_policy - s.logp_ref;
    weighted += s.reward * ratio;
    kl += ratio;
  }
  const auto n = static_cast<double>(batch.size());
  return -weighted / n + beta * kl / n;
}

std::vector<double> GrpoLossGradient(std::span<const GrpoSample> batch, double beta) {
  CheckBatch(batch, beta);
  const auto n = static_cast<double>(batch.size());
  std::vector<double> grad;
  grad.reserve(batch.size());
  for (const GrpoSample& s : batch) grad.push_back((beta - s.reward) / n);
  return grad;
}

std::vector<double> GroupAdvantage(std::span<const double> rewards) {
  if (rewards.size() < 2) {
    Fail(ErrorCode::kDegenerateGroup, "group advantage needs at least two samples");
  }
  const auto n = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= n;
  double var = 0.0;
  bool all_equal = true;
  for (double r : rewards) {
    var += (r - mean) * (r - mean);
    all_equal = all_equal && r == rewards.front();
  }
  std::vector<double> out(rewards.size(), 0.0);
  if (all_equal) return out;
  const double denom = std::sqrt(var / n) + 1e-8;
  for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / denom;
  return out;
}

}  // namespace skyforge
