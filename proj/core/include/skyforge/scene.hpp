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

#ifndef SKYFORGE_SCENE_HPP_
#define SKYFORGE_SCENE_HPP_

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skyforge/types.hpp"

namespace skyforge {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Interleaved 8-bit RGB, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h, Rgb fill = {});

  Rgb At(int x, int y) const {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
    return {data[i], data[i + 1], data[i + 2]};
  }
  void Set(int x, int y, Rgb c) {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
    data[i] = c.r;
    data[i + 1] = c.g;
    data[i + 2] = c.b;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Per-pixel class ids plus the id -> name table.
struct SemanticMask {
  int width = 0;
  int height = 0;
  std::vector<ClassId> class_ids;
  std::map<ClassId, std::string> class_table;

  SemanticMask() = default;
  SemanticMask(int w, int h, ClassId fill = 0);

  ClassId At(int x, int y) const {
    return class_ids[static_cast<std::size_t>(y) * width + x];
  }
  void Set(int x, int y, ClassId id) {
    class_ids[static_cast<std::size_t>(y) * width + x] = id;
  }
  bool InBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  // Falls back to "class_<id>" for ids absent from the table.
  std::string ClassName(ClassId id) const;
  std::optional<ClassId> FindClass(const std::string& name) const;

  friend bool operator==(const SemanticMask&, const SemanticMask&) = default;
};

// LiDAR-frame points in meters.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

// Pinhole intrinsics plus the LiDAR -> camera extrinsics.
struct CameraModel {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  friend bool operator==(const CameraModel&, const CameraModel&) = default;
};

// Homogeneous camera -> world transform.
struct PoseTransform {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();

  friend bool operator==(const PoseTransform&, const PoseTransform&) = default;
};

struct SceneFrame {
  std::string frame_id;
  RgbImage rgb;
  SemanticMask mask;
  std::optional<PointCloud> cloud;
  std::optional<CameraModel> camera;
  std::optional<PoseTransform> pose;

  int width() const { return mask.width; }
  int height() const { return mask.height; }
  bool HasMetricInputs() const { return cloud.has_value() && camera.has_value(); }
  bool HasHeightInputs() const { return HasMetricInputs() && pose.has_value(); }

  friend bool operator==(const SceneFrame&, const SceneFrame&) = default;
};

// One connected component of a single semantic class.
struct ObjectInstance {
  ClassId class_id = 0;
  PixelSet pixels;
  Box bbox;
  Point2 centroid;

  std::size_t area() const { return pixels.size(); }

  static ObjectInstance FromPixels(ClassId class_id, PixelSet pixels);
};

enum class ViolationKind {
  kEmptyDimensions,
  kPixelCountMismatch,
  kUnknownClassId,
  kDimensionMismatch,
  kNonFiniteCloudPoint,
  kNonPositiveFocal,
  kRotationNotOrthonormal,
  kPoseBottomRow,
  kPoseNotOrthonormal,
};

std::string_view ViolationName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

// Max |R^T R - I| element.
double OrthonormalityError(const Eigen::Matrix3d& rotation);

inline constexpr double kOrthonormalTolerance = 1e-6;

// Empty iff every SceneFrame invariant holds. Violations are data.
std::vector<Violation> ValidateFrame(const SceneFrame& frame);

}  // namespace skyforge

#endif  // SKYFORGE_SCENE_HPP_
