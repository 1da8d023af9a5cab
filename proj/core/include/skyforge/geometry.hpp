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

#ifndef SKYFORGE_GEOMETRY_HPP_
#define SKYFORGE_GEOMETRY_HPP_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "skyforge/rng.hpp"
#include "skyforge/scene.hpp"

namespace skyforge {

enum class Connectivity { kFour = 4, kEight = 8 };

// Connected components of every class, in row-major order of each
// component's first pixel. Pixels of `background` (when given) are skipped.
std::vector<ObjectInstance> ExtractInstances(
    const SemanticMask& mask, Connectivity connectivity = Connectivity::kFour,
    std::optional<ClassId> background = std::nullopt);

// `count` distinct pixels of `inst`, drawn from `rng`. count must lie in
// [5, 8]; throws InsufficientArea when inst.area() < count.
std::vector<Pixel> SamplePointsInMask(const ObjectInstance& inst, int count,
                                      Rng& rng);

// Distinct-pixel draw without the [5, 8] count restriction.
std::vector<Pixel> SampleDistinctPixels(const PixelSet& pixels,
                                        std::size_t count, Rng& rng);

inline constexpr int kDefaultFreeSpaceMinArea = 500;

struct FreeRegion {
  ObjectInstance component;
  std::vector<Pixel> sample_points;  // 3..5 interior pixels

  std::size_t area() const { return component.area(); }
};

// Background components with area strictly greater than `min_area`, each with
// 3-5 sampled points. Throws NoBackgroundClass when `background` is empty.
std::vector<FreeRegion> ExtractFreeSpace(
    const SemanticMask& mask, std::optional<ClassId> background, Rng& rng,
    int min_area = kDefaultFreeSpaceMinArea,
    Connectivity connectivity = Connectivity::kFour);

// Image coordinates, y grows downward. Values are ordered counter-clockwise
// on screen starting at "right", so the antipode of k is (k + 4) % 8.
enum class RelationClass {
  kRight = 0,
  kDownRight,
  kDown,
  kDownLeft,
  kLeft,
  kUpLeft,
  kUp,
  kUpRight,
};

inline constexpr std::array<RelationClass, 8> kAllRelations = {
    RelationClass::kRight,  RelationClass::kDownRight, RelationClass::kDown,
    RelationClass::kDownLeft, RelationClass::kLeft,    RelationClass::kUpLeft,
    RelationClass::kUp,     RelationClass::kUpRight};

std::string_view RelationName(RelationClass r);
// Human phrasing used in questions, e.g. "below and to the right of".
std::string_view RelationPhrase(RelationClass r);
std::optional<RelationClass> RelationFromName(std::string_view name);
RelationClass Antipode(RelationClass r);

// Relation of object j as seen from subject i.
struct RelationJudgment {
  double theta = 0.0;     // atan2(dy, dx) in (-pi, pi]
  double distance = 0.0;  // Euclidean pixels
  RelationClass relation = RelationClass::kRight;
};

inline constexpr double kDefaultRelationMinDistance = 50.0;

// std::nullopt when the centroids are no more than `min_dist` apart. Sector k
// covers [-22.5 + 45k, 22.5 + 45k) degrees. Throws DegenerateCentroids when
// ci == cj.
std::optional<RelationJudgment> ClassifyRelation(
    Point2 ci, Point2 cj, double min_dist = kDefaultRelationMinDistance);

}  // namespace skyforge

#endif  // SKYFORGE_GEOMETRY_HPP_
