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

#include "skyforge/scene.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "fmt/format.h"

namespace skyforge {

RgbImage::RgbImage(int w, int h, Rgb fill) : width(w), height(h) {
  data.resize(3 * static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < data.size(); i += 3) {
    data[i] = fill.r;
    data[i + 1] = fill.g;
    data[i + 2] = fill.b;
  }
}

SemanticMask::SemanticMask(int w, int h, ClassId fill)
    : width(w), height(h), class_ids(static_cast<std::size_t>(w) * h, fill) {}

std::string SemanticMask::ClassName(ClassId id) const {
  auto it = class_table.find(id);
  if (it != class_table.end()) return it->second;
  return fmt::format("class_{}", id);
}

std::optional<ClassId> SemanticMask::FindClass(const std::string& name) const {
  for (const auto& [id, n] : class_table) {
    if (n == name) return id;
  }
  return std::nullopt;
}

ObjectInstance ObjectInstance::FromPixels(ClassId class_id, PixelSet pixels) {
  ObjectInstance inst;
  inst.class_id = class_id;
  inst.bbox = pixels.BoundingBox();
  inst.centroid = pixels.Centroid();
  inst.pixels = std::move(pixels);
  return inst;
}

std::string_view ViolationName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEmptyDimensions: return "EmptyDimensions";
    case ViolationKind::kPixelCountMismatch: return "PixelCountMismatch";
    case ViolationKind::kUnknownClassId: return "UnknownClassId";
    case ViolationKind::kDimensionMismatch: return "DimensionMismatch";
    case ViolationKind::kNonFiniteCloudPoint: return "NonFiniteCloudPoint";
    case ViolationKind::kNonPositiveFocal: return "NonPositiveFocal";
    case ViolationKind::kRotationNotOrthonormal: return "RotationNotOrthonormal";
    case ViolationKind::kPoseBottomRow: return "PoseBottomRow";
    case ViolationKind::kPoseNotOrthonormal: return "PoseNotOrthonormal";
  }
  return "Unknown";
}

double OrthonormalityError(const Eigen::Matrix3d& rotation) {
  const Eigen::Matrix3d residual =
      rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
  return residual.cwiseAbs().maxCoeff();
}

std::vector<Violation> ValidateFrame(const SceneFrame& frame) {
  std::vector<Violation> out;
  const SemanticMask& mask = frame.mask;
  if (mask.width <= 0 || mask.height <= 0) {
    out.push_back({ViolationKind::kEmptyDimensions,
                   fmt::format("mask is {}x{}", mask.width, mask.height)});
  }
  const auto expected =
      static_cast<std::size_t>(std::max(mask.width, 0)) * std::max(mask.height, 0);
  if (mask.class_ids.size() != expected) {
    out.push_back({ViolationKind::kPixelCountMismatch,
                   fmt::format("mask holds {} ids, expected {}",
                               mask.class_ids.size(), expected)});
  }
  std::set<ClassId> unknown;
  for (ClassId id : mask.class_ids) {
    if (!mask.class_table.contains(id)) unknown.insert(id);
  }
  for (ClassId id : unknown) {
    out.push_back({ViolationKind::kUnknownClassId,
                   fmt::format("class id {} missing from class table", id)});
  }
  if (frame.rgb.width != mask.width || frame.rgb.height != mask.height ||
      frame.rgb.data.size() != 3 * expected) {
    out.push_back({ViolationKind::kDimensionMismatch,
                   fmt::format("rgb {}x{} vs mask {}x{}", frame.rgb.width,
                               frame.rgb.height, mask.width, mask.height)});
  }
  if (frame.cloud) {
    for (std::size_t i = 0; i < frame.cloud->points.size(); ++i) {
      if (!frame.cloud->points[i].allFinite()) {
        out.push_back({ViolationKind::kNonFiniteCloudPoint,
                       fmt::format("cloud point {} is not finite", i)});
        break;
      }
    }
  }
  if (frame.camera) {
    const CameraModel& cam = *frame.camera;
    if (!(cam.fx > 0.0) || !(cam.fy > 0.0)) {
      out.push_back({ViolationKind::kNonPositiveFocal,
                     fmt::format("fx={} fy={}", cam.fx, cam.fy)});
    }
    const double err = OrthonormalityError(cam.rotation);
    if (!(err <= kOrthonormalTolerance)) {
      out.push_back({ViolationKind::kRotationNotOrthonormal,
                     fmt::format("max |R^T R - I| = {}", err)});
    }
  }
  if (frame.pose) {
    const Eigen::Matrix4d& m = frame.pose->matrix;
    if (m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 || m(3, 3) != 1.0) {
      out.push_back({ViolationKind::kPoseBottomRow,
                     fmt::format("bottom row ({},{},{},{})", m(3, 0), m(3, 1),
                                 m(3, 2), m(3, 3))});
    }
    const double err = OrthonormalityError(m.topLeftCorner<3, 3>());
    if (!(err <= kOrthonormalTolerance)) {
      out.push_back({ViolationKind::kPoseNotOrthonormal,
                     fmt::format("max |R^T R - I| = {}", err)});
    }
  }
  return out;
}

}  // namespace skyforge
