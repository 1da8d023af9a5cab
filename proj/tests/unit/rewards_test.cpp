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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "skyforge/error.hpp"
#include "skyforge/metrics.hpp"
#include "skyforge/rewards.hpp"

namespace skyforge {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(SftLoss, Fixtures) {
  const std::vector<double> zeros = {-3.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(SftLoss(zeros, 2), 0.0);
  const std::vector<double> ones = {-1.0, -1.0};
  EXPECT_DOUBLE_EQ(SftLoss(ones, 1), 1.0);
  const std::vector<double> mixed = {-0.5, -1.5, -2.0};
  EXPECT_DOUBLE_EQ(SftLoss(mixed, 2), 1.75);
}

TEST(SftLoss, Errors) {
  const std::vector<double> lp = {-1.0, -2.0};
  EXPECT_EQ(CodeOf([&] { SftLoss(lp, 3); }), ErrorCode::kEmptyAnswerSpan);
  EXPECT_EQ(CodeOf([&] { SftLoss(lp, 0); }), ErrorCode::kInvalidArgument);
  const std::vector<double> bad = {-1.0, 0.5};
  EXPECT_EQ(CodeOf([&] { SftLoss(bad, 1); }), ErrorCode::kInvalidArgument);
}

TEST(PointReward, L1Boundary) {
  const std::vector<Point2> pred = {{100, 100}};
  const std::vector<Point2> at50 = {{120, 130}};
  const std::vector<Point2> at51 = {{126, 125}};
  EXPECT_DOUBLE_EQ(PointReward(pred, at50), 1.0);
  EXPECT_DOUBLE_EQ(PointReward(pred, at51), 0.0);
  const std::vector<Point2> preds = {{0, 0}, {100, 100}};
  const std::vector<Point2> gts = {{0, 0}, {300, 300}};
  EXPECT_DOUBLE_EQ(PointReward(preds, gts), 0.5);
  EXPECT_DOUBLE_EQ(PointReward({}, gts), 0.0);
  EXPECT_EQ(CodeOf([&] { PointReward(preds, {}); }), ErrorCode::kEmptyGroundTruth);
}

TEST(PointReward, PermutationInvariant) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> c(0, 200);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point2> preds(6), gts(4);
    for (auto& p : preds) p = {c(gen), c(gen)};
    for (auto& g : gts) g = {c(gen), c(gen)};
    const double base = PointReward(preds, gts);
    std::shuffle(preds.begin(), preds.end(), gen);
    std::shuffle(gts.begin(), gts.end(), gen);
    EXPECT_EQ(PointReward(preds, gts), base);
  }
}

TEST(ChoiceReward, ExactMatchIgnoringCase) {
  EXPECT_EQ(ChoiceReward('B', 'B'), 1.0);
  EXPECT_EQ(ChoiceReward('A', 'B'), 0.0);
  EXPECT_EQ(ChoiceReward('b', 'B'), 1.0);
}

TEST(BoxReward, IsIou) {
  EXPECT_EQ(BoxReward({0, 0, 9, 9}, {0, 0, 9, 9}), 1.0);
  EXPECT_EQ(BoxReward({0, 0, 9, 9}, {20, 20, 29, 29}), 0.0);
  EXPECT_DOUBLE_EQ(BoxReward({0, 0, 9, 9}, {5, 5, 14, 14}), 25.0 / 175.0);
  std::mt19937_64 gen(2);
  std::uniform_int_distribution<int> c(0, 50);
  for (int i = 0; i < 200; ++i) {
    const Box a = Box{c(gen), c(gen), c(gen), c(gen)}.Normalized();
    const Box b = Box{c(gen), c(gen), c(gen), c(gen)}.Normalized();
    EXPECT_EQ(BoxReward(a, b), Iou(a, b));
  }
}

TEST(GrpoLoss, Fixtures) {
  EXPECT_EQ(kDefaultKlBeta, 0.01);
  const std::vector<GrpoSample> same = {{1.0, -2.0, -2.0}, {0.0, -5.0, -5.0}};
  EXPECT_DOUBLE_EQ(GrpoLoss(same), 0.0);
  const std::vector<GrpoSample> one = {{1.0, -1.0, -1.2}};
  EXPECT_NEAR(GrpoLoss(one), -0.198, 1e-12);
  const std::vector<GrpoSample> zero_reward = {{0.0, -1.0, -3.0}, {0.0, -2.0, -1.0}};
  EXPECT_DOUBLE_EQ(GrpoLoss(zero_reward, 0.0), 0.0);
  EXPECT_EQ(CodeOf([] { GrpoLoss({}); }), ErrorCode::kEmptyBatch);
  EXPECT_EQ(CodeOf([&] { GrpoLoss(one, -0.1); }), ErrorCode::kInvalidArgument);
}

TEST(GrpoLoss, GradientMatchesCentralDifference) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> r(0.0, 1.0);
  std::uniform_real_distribution<double> lp(-20.0, -0.1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GrpoSample> batch(2 + trial % 7);
    for (auto& s : batch) s = {r(gen), lp(gen), lp(gen)};
    const auto grad = GrpoLossGradient(batch);
    const double h = 1e-4;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      auto plus = batch, minus = batch;
      plus[i].logp_policy += h;
      minus[i].logp_policy -= h;
      const double fd = (GrpoLoss(plus) - GrpoLoss(minus)) / (2 * h);
      EXPECT_LE(std::abs(fd - grad[i]), 1e-6 * std::abs(grad[i])) << fd << " vs " << grad[i];
    }
  }
}

TEST(GroupAdvantage, Fixtures) {
  const std::vector<double> two = {1.0, 0.0};
  const auto a = GroupAdvantage(two);
  EXPECT_NEAR(a[0], 1.0, 1e-6);
  EXPECT_NEAR(a[1], -1.0, 1e-6);
  const std::vector<double> flat = {0.5, 0.5, 0.5};
  EXPECT_EQ(GroupAdvantage(flat), std::vector<double>(3, 0.0));
  const std::vector<double> single = {1.0};
  EXPECT_EQ(CodeOf([&] { GroupAdvantage(single); }), ErrorCode::kDegenerateGroup);
}

TEST(GroupAdvantage, Centered) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> r(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> rewards(2 + trial % 10);
    for (double& x : rewards) x = r(gen);
    const auto adv = GroupAdvantage(rewards);
    EXPECT_NEAR(std::accumulate(adv.begin(), adv.end(), 0.0) / adv.size(), 0.0, 1e-9);
  }
}

}  // namespace
}  // namespace skyforge
