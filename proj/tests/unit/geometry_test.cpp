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

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "skyforge/error.hpp"
#include "skyforge/geometry.hpp"

namespace skyforge {
namespace {

using testing::FloodFillComponents;
using testing::RandomMask;

void ExpectMatchesOracle(const SemanticMask& mask, Connectivity conn,
                         std::optional<ClassId> skip) {
  const auto got = ExtractInstances(mask, conn, skip);
  const auto want = FloodFillComponents(mask, conn == Connectivity::kEight, skip);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].class_id, want[i].class_id);
    ASSERT_EQ(got[i].area(), want[i].pixels.size());
    EXPECT_EQ(got[i].pixels, PixelSet(want[i].pixels));
    EXPECT_EQ(got[i].bbox, want[i].bbox);
    EXPECT_DOUBLE_EQ(got[i].centroid.x, want[i].cx);
    EXPECT_DOUBLE_EQ(got[i].centroid.y, want[i].cy);
  }
}

TEST(ExtractInstances, TwoDisjointSquares) {
  SemanticMask mask(12, 12, 0);
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) mask.Set(x, y, 5);
  for (int y = 7; y <= 9; ++y)
    for (int x = 6; x <= 8; ++x) mask.Set(x, y, 5);
  const auto inst = ExtractInstances(mask, Connectivity::kFour, ClassId{0});
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst[0].area(), 9u);
  EXPECT_EQ(inst[1].area(), 9u);
  EXPECT_EQ(inst[0].bbox, (Box{1, 1, 3, 3}));
}

TEST(ExtractInstances, AllBackgroundIsEmpty) {
  SemanticMask mask(8, 8, 0);
  EXPECT_TRUE(ExtractInstances(mask, Connectivity::kFour, ClassId{0}).empty());
}

TEST(ExtractInstances, SinglePixel) {
  SemanticMask mask(10, 10, 0);
  mask.Set(7, 7, 2);
  const auto inst = ExtractInstances(mask, Connectivity::kFour, ClassId{0});
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].bbox, (Box{7, 7, 7, 7}));
  EXPECT_EQ(inst[0].centroid, (Point2{7, 7}));
}

TEST(ExtractInstances, DiagonalNeighboursDependOnConnectivity) {
  SemanticMask mask(4, 4, 0);
  mask.Set(0, 0, 1);
  mask.Set(1, 1, 1);
  EXPECT_EQ(ExtractInstances(mask, Connectivity::kFour, ClassId{0}).size(), 2u);
  EXPECT_EQ(ExtractInstances(mask, Connectivity::kEight, ClassId{0}).size(), 1u);
}

TEST(ExtractInstances, MatchesFloodFillOnRandomMasks) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const SemanticMask mask = RandomMask(gen, 32, 32, 2 + trial % 5);
    ExpectMatchesOracle(mask, Connectivity::kFour, ClassId{0});
    ExpectMatchesOracle(mask, Connectivity::kEight, ClassId{0});
    ExpectMatchesOracle(mask, Connectivity::kFour, std::nullopt);
  }
}

TEST(ExtractInstances, BoundingBoxIsPixelHull) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 30; ++trial) {
    const SemanticMask mask = RandomMask(gen, 24, 20, 4);
    for (const ObjectInstance& inst : ExtractInstances(mask)) {
      int x1 = 1 << 30, y1 = 1 << 30, x2 = -1, y2 = -1;
      for (const Pixel& p : inst.pixels) {
        x1 = std::min(x1, p.x);
        y1 = std::min(y1, p.y);
        x2 = std::max(x2, p.x);
        y2 = std::max(y2, p.y);
      }
      EXPECT_EQ(inst.bbox, (Box{x1, y1, x2, y2}));
      EXPECT_GE(inst.centroid.x, x1);
      EXPECT_LE(inst.centroid.x, x2);
      EXPECT_GE(inst.centroid.y, y1);
      EXPECT_LE(inst.centroid.y, y2);
    }
  }
}

ObjectInstance Square(int x0, int y0, int side) {
  std::vector<Pixel> px;
  for (int y = y0; y < y0 + side; ++y)
    for (int x = x0; x < x0 + side; ++x) px.push_back({x, y});
  return ObjectInstance::FromPixels(1, PixelSet(px));
}

TEST(SamplePointsInMask, DistinctMembersAndDeterministic) {
  const ObjectInstance inst = Square(3, 4, 10);
  Rng a(42), b(42);
  const auto pa = SamplePointsInMask(inst, 8, a);
  const auto pb = SamplePointsInMask(inst, 8, b);
  EXPECT_EQ(pa, pb);
  ASSERT_EQ(pa.size(), 8u);
  std::set<std::pair<int, int>> uniq;
  for (const Pixel& p : pa) {
    EXPECT_TRUE(inst.pixels.Contains(p));
    uniq.insert({p.x, p.y});
  }
  EXPECT_EQ(uniq.size(), 8u);
}

TEST(SamplePointsInMask, TooSmallThrows) {
  const ObjectInstance inst =
      ObjectInstance::FromPixels(1, PixelSet({{0, 0}, {1, 0}, {2, 0}}));
  Rng rng(1);
  try {
    SamplePointsInMask(inst, 5, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientArea);
  }
}

SemanticMask BlobMask(int side) {
  SemanticMask mask(40, 40, 3);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) mask.Set(x + 2, y + 2, 0);
  return mask;
}

TEST(ExtractFreeSpace, AreaThreshold) {
  Rng rng(3);
  const auto big = ExtractFreeSpace(BlobMask(30), ClassId{0}, rng);
  ASSERT_EQ(big.size(), 1u);
  EXPECT_EQ(big[0].area(), 900u);
  EXPECT_GE(big[0].sample_points.size(), 3u);
  EXPECT_LE(big[0].sample_points.size(), 5u);
  for (const Pixel& p : big[0].sample_points) {
    EXPECT_TRUE(big[0].component.pixels.Contains(p));
  }
  EXPECT_TRUE(ExtractFreeSpace(BlobMask(20), ClassId{0}, rng).empty());
  EXPECT_TRUE(ExtractFreeSpace(SemanticMask(40, 40, 3), ClassId{0}, rng).empty());
}

TEST(ExtractFreeSpace, StrictlyGreaterThanMinimum) {
  SemanticMask mask(50, 50, 1);
  for (int i = 0; i < 500; ++i) mask.Set(i % 50, i / 50, 0);
  Rng rng(0);
  EXPECT_TRUE(ExtractFreeSpace(mask, ClassId{0}, rng, 500).empty());
  mask.Set(0, 10, 0);
  EXPECT_EQ(ExtractFreeSpace(mask, ClassId{0}, rng, 500).size(), 1u);
}

TEST(ExtractFreeSpace, NeedsBackground) {
  Rng rng(0);
  try {
    ExtractFreeSpace(BlobMask(30), std::nullopt, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoBackgroundClass);
  }
}

TEST(ExtractFreeSpace, RegionsMatchFloodFill) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SemanticMask mask = RandomMask(gen, 32, 32, 2);
    Rng rng(trial);
    const auto regions = ExtractFreeSpace(mask, ClassId{0}, rng, 50);
    std::vector<testing::OracleComponent> want;
    for (auto& c : FloodFillComponents(mask, false, std::nullopt)) {
      if (c.class_id == 0 && c.pixels.size() > 50) want.push_back(std::move(c));
    }
    ASSERT_EQ(regions.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(regions[i].component.pixels, PixelSet(want[i].pixels));
    }
  }
}

TEST(ClassifyRelation, AxisAlignedRight) {
  const auto j = ClassifyRelation({100, 100}, {200, 100});
  ASSERT_TRUE(j);
  EXPECT_EQ(j->relation, RelationClass::kRight);
  EXPECT_DOUBLE_EQ(j->distance, 100.0);
}

TEST(ClassifyRelation, BelowThresholdIsNone) {
  EXPECT_FALSE(ClassifyRelation({0, 0}, {30, 30}));
  EXPECT_FALSE(ClassifyRelation({0, 0}, {50, 0}));
  EXPECT_TRUE(ClassifyRelation({0, 0}, {50.001, 0}));
}

TEST(ClassifyRelation, ImageYPointsDown) {
  const auto j = ClassifyRelation({0, 0}, {100, 100});
  ASSERT_TRUE(j);
  EXPECT_EQ(j->relation, RelationClass::kDownRight);
  EXPECT_NEAR(j->theta, std::numbers::pi / 4, 1e-12);
}

TEST(ClassifyRelation, SameCentroidThrows) {
  try {
    ClassifyRelation({5, 5}, {5, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCentroids);
  }
}

TEST(ClassifyRelation, SectorBoundariesAreHalfOpen) {
  const double r = 100.0;
  for (int k = 0; k < 8; ++k) {
    const double deg = 22.5 + 45.0 * k;
    const double rad = deg * std::numbers::pi / 180.0;
    // Just past a boundary belongs to the next sector counter-clockwise in
    // angle terms; just before it belongs to the current one.
    const auto before = ClassifyRelation({0, 0}, {r * std::cos(rad - 1e-6), r * std::sin(rad - 1e-6)});
    const auto after = ClassifyRelation({0, 0}, {r * std::cos(rad + 1e-6), r * std::sin(rad + 1e-6)});
    ASSERT_TRUE(before && after);
    EXPECT_EQ(static_cast<int>(before->relation), k);
    EXPECT_EQ(static_cast<int>(after->relation), (k + 1) % 8);
  }
}

TEST(ClassifyRelation, AntipodalSymmetry) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> coord(-300.0, 300.0);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const Point2 a{coord(gen), coord(gen)};
    const Point2 b{coord(gen), coord(gen)};
    const auto ab = ClassifyRelation(a, b);
    const auto ba = ClassifyRelation(b, a);
    ASSERT_EQ(ab.has_value(), ba.has_value());
    if (!ab) continue;
    ++checked;
    EXPECT_EQ(ba->relation, Antipode(ab->relation));
  }
  EXPECT_GT(checked, 1000);
}

TEST(Relation, NamesAndAntipodes) {
  std::set<std::string_view> names;
  for (RelationClass r : kAllRelations) {
    names.insert(RelationName(r));
    EXPECT_EQ(RelationFromName(RelationName(r)), r);
    EXPECT_EQ(Antipode(Antipode(r)), r);
    EXPECT_NE(Antipode(r), r);
  }
  EXPECT_EQ(names.size(), 8u);
}

}  // namespace
}  // namespace skyforge
