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

#include <fstream>

#include "skyforge/error.hpp"
#include "skyforge/scene_io.hpp"
#include "skyforge/synth.hpp"
#include "temp_dir.hpp"

namespace skyforge {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

SceneFrame SampleFrame(std::uint64_t seed) {
  return SynthScene(RandomSynthSpec(seed, 64, 48, "frame_" + std::to_string(seed))).first;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(SceneIo, RoundTripIsStable) {
  TempDir tmp("scene_rt");
  const SceneFrame original = SampleFrame(3);
  WriteScene(tmp / "frame_3", original);
  const SceneFrame once = LoadScene(tmp / "frame_3");
  EXPECT_EQ(once.frame_id, "frame_3");
  EXPECT_EQ(once.rgb, original.rgb);
  EXPECT_EQ(once.mask, original.mask);
  ASSERT_TRUE(once.camera && once.pose && once.cloud);
  EXPECT_EQ(*once.camera, *original.camera);
  EXPECT_EQ(*once.pose, *original.pose);
  ASSERT_EQ(once.cloud->points.size(), original.cloud->points.size());
  for (std::size_t i = 0; i < once.cloud->points.size(); ++i) {
    // The cloud file stores float32 coordinates.
    EXPECT_NEAR((once.cloud->points[i] - original.cloud->points[i]).norm(), 0.0, 1e-4);
  }

  WriteScene(tmp / "again" / "frame_3", once);
  const SceneFrame twice = LoadScene(tmp / "again" / "frame_3");
  EXPECT_EQ(twice, once);
  EXPECT_TRUE(ValidateFrame(twice).empty());
}

TEST(SceneIo, CloudIsOptional) {
  TempDir tmp("scene_nocloud");
  WriteScene(tmp / "f", SampleFrame(4));
  fs::remove(tmp / "f" / kCloudFile);
  const SceneFrame f = LoadScene(tmp / "f");
  EXPECT_FALSE(f.cloud.has_value());
  EXPECT_FALSE(f.HasMetricInputs());
  EXPECT_TRUE(f.camera.has_value());
}

TEST(SceneIo, DimensionMismatch) {
  TempDir tmp("scene_dims");
  SceneFrame f;
  f.rgb = RgbImage(100, 100);
  f.mask = SemanticMask(100, 99, 0);
  f.mask.class_table = {{0, "ground"}};
  WriteScene(tmp / "f", f);
  EXPECT_EQ(CodeOf([&] { LoadScene(tmp / "f"); }), ErrorCode::kDimensionMismatch);
}

TEST(SceneIo, MissingAndUnknown) {
  TempDir tmp("scene_missing");
  EXPECT_EQ(CodeOf([&] { LoadScene(tmp / "nothing"); }), ErrorCode::kMissingFile);

  SceneFrame f = SampleFrame(5);
  f.mask.class_table.erase(f.mask.class_ids.front());
  WriteScene(tmp / "f", f);
  EXPECT_EQ(CodeOf([&] { LoadScene(tmp / "f"); }), ErrorCode::kUnknownClassId);
}

TEST(SceneIo, MalformedPose) {
  TempDir tmp("scene_pose");
  WriteScene(tmp / "f", SampleFrame(6));
  std::ofstream(tmp / "f" / kPoseFile) << "1 0 0\n0 1 0\n";
  EXPECT_EQ(CodeOf([&] { LoadScene(tmp / "f"); }), ErrorCode::kMalformedMatrix);
}

TEST(SceneIo, TruncatedCloud) {
  TempDir tmp("scene_cloud");
  WriteScene(tmp / "f", SampleFrame(7));
  std::ofstream(tmp / "f" / kCloudFile, std::ios::binary) << "abcdefg";
  EXPECT_EQ(CodeOf([&] { LoadScene(tmp / "f"); }), ErrorCode::kMalformedFile);
}

TEST(SceneIo, FindSceneDirsIsSorted) {
  TempDir tmp("scene_find");
  WriteScene(tmp / "b", SampleFrame(1));
  WriteScene(tmp / "a", SampleFrame(2));
  fs::create_directories(tmp / "not_a_scene");
  const auto dirs = FindSceneDirs(tmp.path());
  ASSERT_EQ(dirs.size(), 2u);
  EXPECT_EQ(dirs[0].filename(), "a");
  EXPECT_EQ(FindSceneDirs(tmp / "a").size(), 1u);
}

bool Has(const std::vector<Violation>& v, ViolationKind kind) {
  for (const Violation& x : v) {
    if (x.kind == kind) return true;
  }
  return false;
}

TEST(ValidateFrame, SynthFramesAreValid) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_TRUE(ValidateFrame(SampleFrame(seed)).empty()) << seed;
  }
}

TEST(ValidateFrame, PoseBottomRow) {
  SceneFrame f = SampleFrame(1);
  f.pose->matrix(3, 3) = 2.0;
  const auto v = ValidateFrame(f);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kPoseBottomRow);
}

TEST(ValidateFrame, ScaledRotation) {
  SceneFrame f = SampleFrame(1);
  f.camera->rotation *= 2.0;
  const auto v = ValidateFrame(f);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kRotationNotOrthonormal);
  EXPECT_NEAR(OrthonormalityError(f.camera->rotation), 3.0, 1e-9);
}

TEST(ValidateFrame, OtherViolations) {
  SceneFrame f = SampleFrame(2);
  f.camera->fx = 0.0;
  f.cloud->points.front().x() = std::numeric_limits<double>::quiet_NaN();
  f.mask.class_table.clear();
  const auto v = ValidateFrame(f);
  EXPECT_TRUE(Has(v, ViolationKind::kNonPositiveFocal));
  EXPECT_TRUE(Has(v, ViolationKind::kNonFiniteCloudPoint));
  EXPECT_TRUE(Has(v, ViolationKind::kUnknownClassId));

  SceneFrame g = SampleFrame(2);
  g.rgb = RgbImage(3, 3);
  EXPECT_TRUE(Has(ValidateFrame(g), ViolationKind::kDimensionMismatch));
}

}  // namespace
}  // namespace skyforge
