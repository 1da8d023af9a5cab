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

#include "skyforge/geometry.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "fmt/format.h"
#include "skyforge/error.hpp"

namespace skyforge {
namespace {

// Labels every pixel; returns per-component pixel lists in discovery order.
std::vector<ObjectInstance> LabelComponents(
    const SemanticMask& mask, Connectivity connectivity,
    const std::function<bool(ClassId)>& keep) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
  std::vector<ObjectInstance> out;
  std::vector<Pixel> stack;

  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int neighbours = connectivity == Connectivity::kEight ? 8 : 4;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (visited[idx]) continue;
      visited[idx] = 1;
      const ClassId cls = mask.class_ids[idx];
      if (!keep(cls)) continue;
      std::vector<Pixel> pixels;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        pixels.push_back(p);
        for (int k = 0; k < neighbours; ++k) {
          const int nx = p.x + kDx[k];
          const int ny = p.y + kDy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
          if (visited[nidx] || mask.class_ids[nidx] != cls) continue;
          visited[nidx] = 1;
          stack.push_back({nx, ny});
        }
      }
      out.push_back(ObjectInstance::FromPixels(cls, PixelSet(std::move(pixels))));
    }
  }
  return out;
}

}  // namespace

std::vector<ObjectInstance> ExtractInstances(const SemanticMask& mask,
                                             Connectivity connectivity,
                                             std::optional<ClassId> background) {
  return LabelComponents(mask, connectivity, [&](ClassId c) {
    return !background.has_value() || c != *background;
  });
}

std::vector<Pixel> SampleDistinctPixels(const PixelSet& pixels,
                                        std::size_t count, Rng& rng) {
  if (pixels.size() < count) {
    Fail(ErrorCode::kInsufficientArea,
         fmt::format("need {} distinct pixels, region has {}", count,
                     pixels.size()));
  }
  std::vector<Pixel> out;
  out.reserve(count);
  for (std::size_t i : rng.SampleDistinct(pixels.size(), count)) {
    out.push_back(pixels[i]);
  }
  return out;
}

std::vector<Pixel> SamplePointsInMask(const ObjectInstance& inst, int count,
                                      Rng& rng) {
  if (count < 5 || count > 8) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("point count must be in [5, 8], got {}", count));
  }
  return SampleDistinctPixels(inst.pixels, static_cast<std::size_t>(count), rng);
}

std::vector<FreeRegion> ExtractFreeSpace(const SemanticMask& mask,
                                         std::optional<ClassId> background,
                                         Rng& rng, int min_area,
                                         Connectivity connectivity) {
  if (!background) {
    Fail(ErrorCode::kNoBackgroundClass,
         "free-space extraction needs a designated background class");
  }
  std::vector<FreeRegion> regions;
  for (ObjectInstance& comp : LabelComponents(
           mask, connectivity, [&](ClassId c) { return c == *background; })) {
    if (comp.area() <= static_cast<std::size_t>(std::max(min_area, 0))) continue;
    FreeRegion region;
    const int count = rng.UniformInt(3, 5);
    region.sample_points =
        SampleDistinctPixels(comp.pixels, static_cast<std::size_t>(count), rng);
    region.component = std::move(comp);
    regions.push_back(std::move(region));
  }
  return regions;
}

std::string_view RelationName(RelationClass r) {
  switch (r) {
    case RelationClass::kRight: return "right";
    case RelationClass::kDownRight: return "down_right";
    case RelationClass::kDown: return "down";
    case RelationClass::kDownLeft: return "down_left";
    case RelationClass::kLeft: return "left";
    case RelationClass::kUpLeft: return "up_left";
    case RelationClass::kUp: return "up";
    case RelationClass::kUpRight: return "up_right";
  }
  return "right";
}

std::string_view RelationPhrase(RelationClass r) {
  switch (r) {
    case RelationClass::kRight: return "to the right of";
    case RelationClass::kDownRight: return "below and to the right of";
    case RelationClass::kDown: return "directly below";
    case RelationClass::kDownLeft: return "below and to the left of";
    case RelationClass::kLeft: return "to the left of";
    case RelationClass::kUpLeft: return "above and to the left of";
    case RelationClass::kUp: return "directly above";
    case RelationClass::kUpRight: return "above and to the right of";
  }
  return "";
}

std::optional<RelationClass> RelationFromName(std::string_view name) {
  for (RelationClass r : kAllRelations) {
    if (RelationName(r) == name) return r;
  }
  return std::nullopt;
}

RelationClass Antipode(RelationClass r) {
  return static_cast<RelationClass>((static_cast<int>(r) + 4) % 8);
}

std::optional<RelationJudgment> ClassifyRelation(Point2 ci, Point2 cj,
                                                 double min_dist) {
  if (!std::isfinite(ci.x) || !std::isfinite(ci.y) || !std::isfinite(cj.x) ||
      !std::isfinite(cj.y)) {
    Fail(ErrorCode::kInvalidArgument, "centroids must be finite");
  }
  const double dx = cj.x - ci.x;
  const double dy = cj.y - ci.y;
  if (dx == 0.0 && dy == 0.0) {
    Fail(ErrorCode::kDegenerateCentroids,
         fmt::format("coincident centroids ({}, {})", ci.x, ci.y));
  }
  const double distance = std::hypot(dx, dy);
  if (!(distance > min_dist)) return std::nullopt;

  RelationJudgment out;
  out.theta = std::atan2(dy, dx);
  if (out.theta == -std::numbers::pi) out.theta = std::numbers::pi;
  out.distance = distance;
  const double degrees = out.theta * 180.0 / std::numbers::pi;
  const int sector = static_cast<int>(std::floor((degrees + 22.5) / 45.0));
  out.relation = static_cast<RelationClass>(((sector % 8) + 8) % 8);
  return out;
}

}  // namespace skyforge
