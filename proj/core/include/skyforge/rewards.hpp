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

#ifndef SKYFORGE_REWARDS_HPP_
#define SKYFORGE_REWARDS_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "skyforge/types.hpp"

namespace skyforge {

// Answer-token negative log-likelihood. `answer_start` is the 1-based index
// k of the first answer token; the loss is -1/(n-k+1) * sum_{i=k..n} logp_i.
// Throws EmptyAnswerSpan when k > n and InvalidArgument when k < 1 or a
// log-probability is positive or NaN.
double SftLoss(std::span<const double> token_logprobs, std::size_t answer_start);

inline constexpr double kPointRewardRadius = 50.0;

// Mean over predictions of 1{min_gt L1(pred, gt) <= radius}. Throws
// EmptyGroundTruth when `gts` is empty; no predictions give 0.
double PointReward(std::span<const Point2> preds, std::span<const Point2> gts,
                   double radius = kPointRewardRadius);

// 1 when the letters agree ignoring case, else 0.
double ChoiceReward(char pred, char gt);

// Same function as Iou.
double BoxReward(const Box& pred, const Box& gt);

inline constexpr double kDefaultKlBeta = 0.01;

struct GrpoSample {
  double reward = 0.0;
  double logp_policy = 0.0;  // sequence log-prob under the policy
  double logp_ref = 0.0;     // sequence log-prob under the reference model
};

// -mean_i[R_i * d_i] + beta * mean_i[d_i] with d_i = logp_policy_i - logp_ref_i.
// Throws EmptyBatch for an empty batch, InvalidArgument for beta < 0.
double GrpoLoss(std::span<const GrpoSample> batch, double beta = kDefaultKlBeta);

// d loss / d logp_policy_i = (beta - R_i) / N.
std::vector<double> GrpoLossGradient(std::span<const GrpoSample> batch,
                                     double beta = kDefaultKlBeta);

// (r - mean) / (std + 1e-8) with the population standard deviation. All-equal
// groups return zeros; fewer than two samples throw DegenerateGroup.
std::vector<double> GroupAdvantage(std::span<const double> rewards);

}  // namespace skyforge

#endif  // SKYFORGE_REWARDS_HPP_
