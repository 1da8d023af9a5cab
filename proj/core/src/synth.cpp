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

#include "skyforge/synth.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "fmt/format.h"
#include "skyforge/color.hpp"
#include "skyforge/error.hpp"
#include "skyforge/rng.hpp"

namespace skyforge {
using nlohmann::json;

std::map<ClassId, std::string> DefaultSynthClasses() {
  return {{0, "ground"},   {1, "car"},  {2, "truck"},      {3, "building"},
          {4, "tree"},     {5, "pool"}, {6, "solar_panel"}};
}

SynthSpec::SynthSpec()
    : lidar_rotation((Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitZ()) *
                      Eigen::AngleAxisd(-0.15, Eigen::Vector3d::UnitX()) *
                      Eigen::AngleAxisd(0.1, Eigen::Vector3d::UnitY()))
                         .toRotationMatrix()) {}

Eigen::Matrix3d SynthCameraToWorld(double tilt_degrees) {
  const Eigen::Matrix3d nadir = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
  const double tilt = tilt_degrees * std::numbers::pi / 180.0;
  return nadir * Eigen::AngleAxisd(tilt, Eigen::Vector3d::UnitX()).toRotationMatrix();
}

const std::vector<std::pair<std::string, Rgb>>& SynthPalette() {
  static const std::vector<std::pair<std::string, Rgb>> kPalette = {
      {"red", {220, 30, 30}},     {"green", {40, 170, 60}},
      {"blue", {30, 60, 210}},    {"yellow", {235, 220, 40}},
      {"white", {245, 245, 245}}, {"black", {15, 15, 15}},
      {"orange", {240, 140, 20}}, {"purple", {140, 50, 180}},
  };
  return kPalette;
}

namespace {

void Validate(const SynthSpec& spec) {
  auto bad = [](const std::string& msg) { Fail(ErrorCode::kInvalidArgument, msg); };
  if (spec.width <= 0 || spec.height <= 0) bad("image dimensions must be positive");
  if (!(spec.fx > 0.0) || !(spec.fy > 0.0)) bad("focal lengths must be positive");
  if (!(spec.lidar_density >= 0.0)) bad("lidar density must be non-negative");
  if (!(std::abs(spec.tilt_degrees) < 60.0)) bad("tilt must lie in (-60, 60) degrees");
  if (!spec.class_table.contains(spec.background_class)) {
    bad("background class missing from class table");
  }
  for (std::size_t i = 0; i < spec.placements.size(); ++i) {
    const Placement& p = spec.placements[i];
    if (p.width <= 0 || p.height <= 0 || p.x < 0 || p.y < 0 ||
        p.x + p.width > spec.width || p.y + p.height > spec.height) {
      bad(fmt::format("placement {} lies outside the {}x{} image", i, spec.width,
                      spec.height));
    }
    if (!spec.class_table.contains(p.class_id)) {
      bad(fmt::format("placement {} uses unknown class {}", i, p.class_id));
    }
    if (!(p.object_height >= 0.0) || !(p.object_height < spec.altitude)) {
      bad(fmt::format("placement {} height {} must lie in [0, altitude)", i,
                      p.object_height));
    }
  }
}

bool Covers(const Placement& p, int x, int y) {
  if (x < p.x || y < p.y || x >= p.x + p.width || y >= p.y + p.height) return false;
  if (p.shape == SynthShape::kRectangle) return true;
  const double cx = p.x + (p.width - 1) / 2.0;
  const double cy = p.y + (p.height - 1) / 2.0;
  const double dx = (x - cx) / (p.width / 2.0);
  const double dy = (y - cy) / (p.height / 2.0);
  return dx * dx + dy * dy <= 1.0;
}

// Eight-way direction from slope comparisons rather than an angle.
RelationClass SlopeRelation(double dx, double dy) {
  const double t1 = std::tan(std::numbers::pi / 8.0);
  const double t2 = std::tan(3.0 * std::numbers::pi / 8.0);
  const double ax = std::abs(dx), ay = std::abs(dy);
  if (ay < t1 * ax) return dx > 0 ? RelationClass::kRight : RelationClass::kLeft;
  if (ay > t2 * ax) return dy > 0 ? RelationClass::kDown : RelationClass::kUp;
  if (dx > 0) return dy > 0 ? RelationClass::kDownRight : RelationClass::kUpRight;
  return dy > 0 ? RelationClass::kDownLeft : RelationClass::kUpLeft;
}

std::size_t Root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::vector<SheetRegion> FreeRegions(const SemanticMask& mask, ClassId background,
                                     int min_area) {
  const std::size_t n = mask.class_ids.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto unite = [&](std::size_t a, std::size_t b) {
    a = Root(parent, a);
    b = Root(parent, b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  const auto w = static_cast<std::size_t>(mask.width);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask.class_ids[i] != background) continue;
    if (i % w + 1 < w && mask.class_ids[i + 1] == background) unite(i, i + 1);
    if (i + w < n && mask.class_ids[i + w] == background) unite(i, i + w);
  }
  // Roots are the smallest member index, i.e. the row-major first pixel.
  std::map<std::size_t, SheetRegion> regions;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask.class_ids[i] != background) continue;
    const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
    auto [it, fresh] = regions.try_emplace(Root(parent, i));
    SheetRegion& r = it->second;
    if (fresh) r.bbox = {x, y, x, y};
    ++r.area;
    r.bbox = {std::min(r.bbox.x1, x), std::min(r.bbox.y1, y), std::max(r.bbox.x2, x),
              std::max(r.bbox.y2, y)};
  }
  std::vector<SheetRegion> out;
  for (const auto& [root, r] : regions) {
    if (r.area > static_cast<std::size_t>(min_area)) out.push_back(r);
  }
  return out;
}

}  // namespace

std::pair<SceneFrame, GroundTruthSheet> SynthScene(const SynthSpec& spec) {
  Validate(spec);
  const int W = spec.width, H = spec.height;
  SceneFrame frame;
  frame.frame_id = spec.frame_id;
  frame.rgb = RgbImage(W, H, spec.background_color);
  frame.mask = SemanticMask(W, H, spec.background_class);
  frame.mask.class_table = spec.class_table;

  // owner[y*W+x]: index of the frontmost placement, -1 for background.
  std::vector<int> owner(static_cast<std::size_t>(W) * H, -1);
  for (std::size_t i = 0; i < spec.placements.size(); ++i) {
    const Placement& p = spec.placements[i];
    for (int y = p.y; y < p.y + p.height; ++y) {
      for (int x = p.x; x < p.x + p.width; ++x) {
        if (!Covers(p, x, y)) continue;
        int& o = owner[static_cast<std::size_t>(y) * W + x];
        if (spec.strict && o >= 0) {
          Fail(ErrorCode::kOverlappingPlacements,
               fmt::format("placements {} and {} overlap at ({}, {})", o, i, x, y));
        }
        o = static_cast<int>(i);
        frame.mask.Set(x, y, p.class_id);
        frame.rgb.Set(x, y, p.color);
      }
    }
  }

  CameraModel cam;
  cam.fx = spec.fx;
  cam.fy = spec.fy;
  cam.cx = spec.cx.value_or(W / 2.0);
  cam.cy = spec.cy.value_or(H / 2.0);
  cam.rotation = spec.lidar_rotation;
  cam.translation = spec.lidar_translation;
  frame.camera = cam;

  const Eigen::Matrix3d r_wc = SynthCameraToWorld(spec.tilt_degrees);
  const Eigen::Vector3d centre(spec.ground_position.x(), spec.ground_position.y(),
                               spec.altitude);
  PoseTransform pose;
  pose.matrix.topLeftCorner<3, 3>() = r_wc;
  pose.matrix.topRightCorner<3, 1>() = centre;
  frame.pose = pose;

  // Ray-cast jittered pixel positions onto the ground or the owning object's
  // top face, then move the hit into the LiDAR frame.
  Rng rng(DeriveSeed(spec.seed, spec.frame_id, "lidar"));
  PointCloud cloud;
  std::vector<double> depth_sum(spec.placements.size(), 0.0);
  std::vector<std::size_t> hits(spec.placements.size(), 0);
  const Eigen::Matrix3d r_lc_t = spec.lidar_rotation.transpose();
  const double whole = std::floor(spec.lidar_density);
  const double frac = spec.lidar_density - whole;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      int n = static_cast<int>(whole);
      if (frac > 0.0 && rng.Bernoulli(frac)) ++n;
      const int o = owner[static_cast<std::size_t>(y) * W + x];
      const double h = o >= 0 ? spec.placements[static_cast<std::size_t>(o)].object_height : 0.0;
      for (int k = 0; k < n; ++k) {
        const double u = rng.Uniform(std::max(0.0, x - 0.4), x + 0.4);
        const double v = rng.Uniform(std::max(0.0, y - 0.4), y + 0.4);
        const Eigen::Vector3d ray((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
        const double down = (r_wc * ray).z();
        if (!(down < 0.0)) continue;
        const double t = (h - spec.altitude) / down;  // camera-frame depth
        const Eigen::Vector3d p_cam = t * ray;
        cloud.points.push_back(r_lc_t * (p_cam - cam.translation));
        if (o >= 0) {
          depth_sum[static_cast<std::size_t>(o)] += t;
          ++hits[static_cast<std::size_t>(o)];
        }
      }
    }
  }
  frame.cloud = std::move(cloud);

  GroundTruthSheet sheet;
  std::vector<std::size_t> area(spec.placements.size(), 0);
  std::vector<Box> bbox(spec.placements.size());
  std::vector<double> sx(spec.placements.size(), 0.0), sy(spec.placements.size(), 0.0);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const int o = owner[static_cast<std::size_t>(y) * W + x];
      if (o < 0) continue;
      const auto i = static_cast<std::size_t>(o);
      if (area[i] == 0) bbox[i] = {x, y, x, y};
      ++area[i];
      bbox[i] = {std::min(bbox[i].x1, x), std::min(bbox[i].y1, y), std::max(bbox[i].x2, x),
                 std::max(bbox[i].y2, y)};
      sx[i] += x;
      sy[i] += y;
    }
  }
  for (std::size_t i = 0; i < spec.placements.size(); ++i) {
    if (area[i] == 0) continue;
    const Placement& p = spec.placements[i];
    SheetObject obj;
    obj.placement = i;
    obj.class_id = p.class_id;
    obj.class_name = spec.class_table.at(p.class_id);
    obj.bbox = bbox[i];
    obj.area = area[i];
    obj.centroid = {sx[i] / static_cast<double>(area[i]), sy[i] / static_cast<double>(area[i])};
    obj.color = DescribeUniform(p.color).ToString();
    obj.lidar_points = hits[i];
    if (hits[i] > 0) {
      obj.depth = depth_sum[i] / static_cast<double>(hits[i]);
      // Every return of this object lies on its top face.
      obj.world_height = p.object_height;
    }
    ++sheet.counts[obj.class_name];
    sheet.objects.push_back(std::move(obj));
  }
  for (std::size_t a = 0; a < sheet.objects.size(); ++a) {
    for (std::size_t b = 0; b < sheet.objects.size(); ++b) {
      if (a == b) continue;
      const double dx = sheet.objects[b].centroid.x - sheet.objects[a].centroid.x;
      const double dy = sheet.objects[b].centroid.y - sheet.objects[a].centroid.y;
      const double dist = std::hypot(dx, dy);
      if (!(dist > spec.relation_min_distance)) continue;
      sheet.relations.push_back({a, b, SlopeRelation(dx, dy), dist});
    }
  }
  sheet.free_regions = FreeRegions(frame.mask, spec.background_class, spec.free_space_min_area);
  return {std::move(frame), std::move(sheet)};
}

SynthSpec RandomSynthSpec(std::uint64_t seed, int width, int height, std::string frame_id) {
  struct ClassShape {
    ClassId id;
    double height_m;
    int weight;
  };
  static constexpr ClassShape kClasses[] = {
      {1, 1.5, 5}, {2, 3.2, 2}, {3, 14.0, 2}, {4, 8.0, 3}, {5, 0.3, 1}, {6, 2.5, 1}};
  SynthSpec spec;
  spec.frame_id = std::move(frame_id);
  spec.width = width;
  spec.height = height;
  spec.fx = spec.fy = static_cast<double>(std::max(width, height));
  spec.seed = seed;
  Rng rng(DeriveSeed(seed, spec.frame_id, "layout"));
  spec.altitude = rng.Uniform(40.0, 80.0);

  int total_weight = 0;
  for (const ClassShape& c : kClasses) total_weight += c.weight;
  const int min_side = std::max(6, std::min(width, height) / 20);
  const int max_side = std::max(min_side + 4, std::min(width, height) / 6);
  const int objects = rng.UniformInt(4, 9);
  std::vector<Box> taken;
  for (int attempt = 0; attempt < 400 && static_cast<int>(taken.size()) < objects; ++attempt) {
    const int w = rng.UniformInt(min_side, max_side);
    const int h = rng.UniformInt(min_side, max_side);
    if (w > width || h > height) continue;
    const int x = rng.UniformInt(0, width - w);
    const int y = rng.UniformInt(0, height - h);
    // Keep a two-pixel gap so no two objects touch under any connectivity.
    const Box box{x - 2, y - 2, x + w + 1, y + h + 1};
    bool clash = false;
    for (const Box& t : taken) {
      if (box.x1 <= t.x2 && t.x1 <= box.x2 && box.y1 <= t.y2 && t.y1 <= box.y2) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    taken.push_back({x, y, x + w - 1, y + h - 1});
    int pick = rng.UniformInt(0, total_weight - 1);
    const ClassShape* cls = &kClasses[0];
    for (const ClassShape& c : kClasses) {
      if (pick < c.weight) {
        cls = &c;
        break;
      }
      pick -= c.weight;
    }
    Placement p;
    p.class_id = cls->id;
    p.shape = rng.Bernoulli(0.5) ? SynthShape::kRectangle : SynthShape::kEllipse;
    p.x = x;
    p.y = y;
    p.width = w;
    p.height = h;
    p.color = SynthPalette()[rng.UniformIndex(SynthPalette().size())].second;
    p.object_height = cls->height_m * rng.Uniform(0.8, 1.2);
    spec.placements.push_back(p);
  }
  return spec;
}

json SheetToJson(const GroundTruthSheet& sheet) {
  auto box = [](const Box& b) { return json::array({b.x1, b.y1, b.x2, b.y2}); };
  json objects = json::array();
  for (const SheetObject& o : sheet.objects) {
    json jo = {{"placement", o.placement},
               {"class_id", o.class_id},
               {"class_name", o.class_name},
               {"bbox", box(o.bbox)},
               {"centroid", json::array({o.centroid.x, o.centroid.y})},
               {"area", o.area},
               {"color", o.color},
               {"lidar_points", o.lidar_points}};
    jo["depth"] = o.depth ? json(*o.depth) : json(nullptr);
    jo["world_height"] = o.world_height ? json(*o.world_height) : json(nullptr);
    objects.push_back(std::move(jo));
  }
  json relations = json::array();
  for (const SheetRelation& r : sheet.relations) {
    relations.push_back({{"subject", r.subject},
                         {"object", r.object},
                         {"relation", RelationName(r.relation)},
                         {"distance", r.distance}});
  }
  json regions = json::array();
  for (const SheetRegion& r : sheet.free_regions) {
    regions.push_back({{"area", r.area}, {"bbox", box(r.bbox)}});
  }
  return {{"objects", objects},
          {"relations", relations},
          {"counts", sheet.counts},
          {"free_regions", regions}};
}

}  // namespace skyforge
