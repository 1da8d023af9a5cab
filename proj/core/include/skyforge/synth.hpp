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

#ifndef SKYFORGE_SYNTH_HPP_
#define SKYFORGE_SYNTH_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skyforge/geometry.hpp"
#include "skyforge/scene.hpp"

namespace skyforge {

enum class SynthShape { kRectangle, kEllipse };

// Axis-aligned footprint given by its top-left pixel and size. Ellipses are
// inscribed in that box.
struct Placement {
  ClassId class_id = 1;
  SynthShape shape = SynthShape::kRectangle;
  int x = 0;
  int y = 0;
  int width = 1;
  int height = 1;
  Rgb color;
  double object_height = 0.0;  // meters above ground
};

std::map<ClassId, std::string> DefaultSynthClasses();

struct SynthSpec {
  std::string frame_id = "synth";
  int width = 128;
  int height = 128;
  double altitude = 50.0;  // camera height above ground, meters
  double fx = 128.0;
  double fy = 128.0;
  std::optional<double> cx;  // default width / 2
  std::optional<double> cy;  // default height / 2
  // Rotation of the camera about its x axis away from nadir, degrees.
  double tilt_degrees = 0.0;
  // World (x, y) of the camera centre.
  Eigen::Vector2d ground_position{12.0, -7.0};
  std::vector<Placement> placements;  // rendered back to front
  ClassId background_class = 0;
  Rgb background_color{128, 128, 128};
  std::map<ClassId, std::string> class_table = DefaultSynthClasses();
  double lidar_density = 1.0;  // expected returns per pixel
  // LiDAR -> camera extrinsics.
  Eigen::Matrix3d lidar_rotation;
  Eigen::Vector3d lidar_translation{0.25, -0.1, 0.05};
  std::uint64_t seed = 0;
  bool strict = false;  // overlapping placements throw
  int free_space_min_area = kDefaultFreeSpaceMinArea;
  double relation_min_distance = kDefaultRelationMinDistance;

  SynthSpec();
};

struct SheetObject {
  std::size_t placement = 0;  // index into SynthSpec::placements
  ClassId class_id = 0;
  std::string class_name;
  Box bbox;
  Point2 centroid;
  std::size_t area = 0;  // visible pixels
  std::string color;
  std::size_t lidar_points = 0;
  std::optional<double> depth;         // mean camera-frame z of the returns
  std::optional<double> world_height;  // top-face altitude when covered
};

struct SheetRelation {
  std::size_t subject = 0;  // object indices into the sheet
  std::size_t object = 0;
  RelationClass relation = RelationClass::kRight;
  double distance = 0.0;
};

struct SheetRegion {
  std::size_t area = 0;
  Box bbox;
};

// Closed-form answers for one synthetic frame, computed without the
// library's own geometry, projection or colour routines where possible.
struct GroundTruthSheet {
  std::vector<SheetObject> objects;  // visible placements, in placement order
  std::vector<SheetRelation> relations;
  std::map<std::string, int> counts;     // class name -> instances
  std::vector<SheetRegion> free_regions;  // row-major discovery order
};

// Throws InvalidArgument on an invalid spec and OverlappingPlacements when
// strict and two placements share a pixel.
std::pair<SceneFrame, GroundTruthSheet> SynthScene(const SynthSpec& spec);

// Random scene with 4-9 pairwise separated objects drawn from the default
// classes and a palette of clean colours.
SynthSpec RandomSynthSpec(std::uint64_t seed, int width = 128, int height = 128,
                          std::string frame_id = "synth");

// Colours used by RandomSynthSpec with the names they should classify as.
const std::vector<std::pair<std::string, Rgb>>& SynthPalette();

nlohmann::json SheetToJson(const GroundTruthSheet& sheet);

// Camera rotation (camera -> world) used by the generator.
Eigen::Matrix3d SynthCameraToWorld(double tilt_degrees);

}  // namespace skyforge

#endif  // SKYFORGE_SYNTH_HPP_
