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

#ifndef SKYFORGE_PROJECTION_HPP_
#define SKYFORGE_PROJECTION_HPP_

#include <Eigen/Core>
#include <span>
#include <vector>

#include "skyforge/scene.hpp"

namespace skyforge {

// p_cam = R * p_lidar + t, order preserved.
std::vector<Eigen::Vector3d> LidarToCamera(const PointCloud& cloud,
                                           const CameraModel& cam);

struct ProjectedPoint {
  Point2 pixel;            // (u, v), real-valued
  double depth_cam = 0.0;  // z in the camera frame, > 0
  std::size_t source_index = 0;
};

// Keeps points with z > 0 whose (u, v) lies in [0, width) x [0, height).
std::vector<ProjectedPoint> ProjectToImage(
    std::span<const Eigen::Vector3d> cam_points, const CameraModel& cam,
    int width, int height);

// Analytic inverse of the pinhole projection at a known depth.
Eigen::Vector3d LiftToCamera(Point2 pixel, double depth, const CameraModel& cam);

// Nearest-integer pixel used for mask membership.
Pixel RoundPixel(Point2 p);

// Projected cloud of one frame, bucketed by rounded pixel so per-object
// queries are proportional to the object's area rather than the cloud size.
class DepthIndex {
 public:
  // Throws MissingModality when the frame lacks cloud or camera.
  explicit DepthIndex(const SceneFrame& frame);

  // Camera-frame points whose rounded projection lands in `pixels`.
  std::vector<Eigen::Vector3d> PointsIn(const PixelSet& pixels) const;

  // Mean camera-frame depth over the object's pixels. Throws NoLidarCoverage.
  double MeanDepth(const ObjectInstance& inst) const;
  // Mean world-frame z after applying the camera -> world pose. Throws
  // MissingModality without a pose and NoLidarCoverage on empty coverage.
  double MeanHeight(const ObjectInstance& inst) const;

  std::size_t projected_count() const { return cam_points_.size(); }

 private:
  int width_ = 0;
  int height_ = 0;
  std::optional<Eigen::Matrix4d> pose_;
  std::vector<Eigen::Vector3d> cam_points_;  // sorted by pixel bucket
  std::vector<std::uint32_t> offsets_;       // size width*height + 1
};

// Convenience wrappers that build a DepthIndex for a single query.
double ObjectMeanDepth(const SceneFrame& frame, const ObjectInstance& inst);
double ObjectMeanHeight(const SceneFrame& frame, const ObjectInstance& inst);

// World altitude of a camera-frame point.
double WorldHeight(const Eigen::Matrix4d& camera_to_world,
                   const Eigen::Vector3d& p_cam);

enum class HeightOrder { kAHigher, kBHigher, kComparable };

std::string_view HeightOrderName(HeightOrder order);

inline constexpr double kDefaultHeightTolerance = 0.5;

// kComparable iff |h_a - h_b| <= tol; otherwise the larger wins.
HeightOrder CompareHeights(double h_a, double h_b,
                           double tol = kDefaultHeightTolerance);

// Object-to-object separation along the viewing axis, |d_i - d_j|.
double DepthSeparation(double depth_i, double depth_j);

}  // namespace skyforge

#endif  // SKYFORGE_PROJECTION_HPP_
