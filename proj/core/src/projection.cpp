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

#include "skyforge/projection.hpp"

#include <Eigen/Geometry>
#include <cmath>

#include "fmt/format.h"
#include "skyforge/error.hpp"

namespace skyforge {

std::vector<Eigen::Vector3d> LidarToCamera(const PointCloud& cloud,
                                           const CameraModel& cam) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(cloud.points.size());
  for (const Eigen::Vector3d& p : cloud.points) {
    out.push_back(cam.rotation * p + cam.translation);
  }
  return out;
}

std::vector<ProjectedPoint> ProjectToImage(
    std::span<const Eigen::Vector3d> cam_points, const CameraModel& cam,
    int width, int height) {
  std::vector<ProjectedPoint> out;
  for (std::size_t i = 0; i < cam_points.size(); ++i) {
    const Eigen::Vector3d& p = cam_points[i];
    if (!(p.z() > 0.0)) continue;
    const double u = cam.fx * p.x() / p.z() + cam.cx;
    const double v = cam.fy * p.y() / p.z() + cam.cy;
    if (u < 0.0 || v < 0.0 || u >= width || v >= height) continue;
    out.push_back({{u, v}, p.z(), i});
  }
  return out;
}

Eigen::Vector3d LiftToCamera(Point2 pixel, double depth,
                             const CameraModel& cam) {
  return {(pixel.x - cam.cx) / cam.fx * depth,
          (pixel.y - cam.cy) / cam.fy * depth, depth};
}

Pixel RoundPixel(Point2 p) {
  return {static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
}

DepthIndex::DepthIndex(const SceneFrame& frame)
    : width_(frame.width()), height_(frame.height()) {
  if (!frame.HasMetricInputs()) {
    Fail(ErrorCode::kMissingModality,
         "frame " + frame.frame_id + " lacks a point cloud or camera model");
  }
  if (frame.pose) pose_ = frame.pose->matrix;
  const std::vector<Eigen::Vector3d> cam = LidarToCamera(*frame.cloud, *frame.camera);
  const std::vector<ProjectedPoint> projected =
      ProjectToImage(cam, *frame.camera, width_, height_);

  const std::size_t buckets = static_cast<std::size_t>(width_) * height_;
  std::vector<std::size_t> bucket_of;
  bucket_of.reserve(projected.size());
  offsets_.assign(buckets + 1, 0);
  for (const ProjectedPoint& pp : projected) {
    const Pixel px = RoundPixel(pp.pixel);
    if (px.x < 0 || px.y < 0 || px.x >= width_ || px.y >= height_) {
      bucket_of.push_back(buckets);
      continue;
    }
    const std::size_t b = static_cast<std::size_t>(px.y) * width_ + px.x;
    bucket_of.push_back(b);
    ++offsets_[b + 1];
  }
  for (std::size_t b = 0; b < buckets; ++b) offsets_[b + 1] += offsets_[b];
  cam_points_.resize(offsets_[buckets]);
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < projected.size(); ++i) {
    if (bucket_of[i] == buckets) continue;
    cam_points_[cursor[bucket_of[i]]++] = cam[projected[i].source_index];
  }
}

std::vector<Eigen::Vector3d> DepthIndex::PointsIn(const PixelSet& pixels) const {
  std::vector<Eigen::Vector3d> out;
  for (const Pixel& p : pixels) {
    if (p.x < 0 || p.y < 0 || p.x >= width_ || p.y >= height_) continue;
    const std::size_t b = static_cast<std::size_t>(p.y) * width_ + p.x;
    for (std::uint32_t i = offsets_[b]; i < offsets_[b + 1]; ++i) {
      out.push_back(cam_points_[i]);
    }
  }
  return out;
}

double DepthIndex::MeanDepth(const ObjectInstance& inst) const {
  const std::vector<Eigen::Vector3d> pts = PointsIn(inst.pixels);
  if (pts.empty()) {
    Fail(ErrorCode::kNoLidarCoverage,
         fmt::format("no LiDAR return inside instance at ({:.1f}, {:.1f})",
                     inst.centroid.x, inst.centroid.y));
  }
  double sum = 0.0;
  for (const Eigen::Vector3d& p : pts) sum += p.z();
  return sum / static_cast<double>(pts.size());
}

double DepthIndex::MeanHeight(const ObjectInstance& inst) const {
  if (!pose_) Fail(ErrorCode::kMissingModality, "height needs a pose");
  const std::vector<Eigen::Vector3d> pts = PointsIn(inst.pixels);
  if (pts.empty()) {
    Fail(ErrorCode::kNoLidarCoverage,
         fmt::format("no LiDAR return inside instance at ({:.1f}, {:.1f})",
                     inst.centroid.x, inst.centroid.y));
  }
  double sum = 0.0;
  for (const Eigen::Vector3d& p : pts) sum += WorldHeight(*pose_, p);
  return sum / static_cast<double>(pts.size());
}

double ObjectMeanDepth(const SceneFrame& frame, const ObjectInstance& inst) {
  return DepthIndex(frame).MeanDepth(inst);
}

double ObjectMeanHeight(const SceneFrame& frame, const ObjectInstance& inst) {
  if (!frame.pose) {
    Fail(ErrorCode::kMissingModality, "frame " + frame.frame_id + " lacks a pose");
  }
  return DepthIndex(frame).MeanHeight(inst);
}

double WorldHeight(const Eigen::Matrix4d& camera_to_world,
                   const Eigen::Vector3d& p_cam) {
  return (camera_to_world * p_cam.homogeneous())(2);
}

std::string_view HeightOrderName(HeightOrder order) {
  switch (order) {
    case HeightOrder::kAHigher: return "a_higher";
    case HeightOrder::kBHigher: return "b_higher";
    case HeightOrder::kComparable: return "comparable";
  }
  return "comparable";
}

HeightOrder CompareHeights(double h_a, double h_b, double tol) {
  if (std::abs(h_a - h_b) <= tol) return HeightOrder::kComparable;
  return h_a > h_b ? HeightOrder::kAHigher : HeightOrder::kBHigher;
}

double DepthSeparation(double depth_i, double depth_j) {
  return std::abs(depth_i - depth_j);
}

}  // namespace skyforge
