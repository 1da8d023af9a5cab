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

#include "skyforge/scene_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fmt/format.h"
#include "png_io.hpp"
#include "skyforge/error.hpp"

namespace skyforge {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little,
              "cloud.bin reader assumes a little-endian host");

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingFile, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kMalformedFile, path.string() + ": " + e.what());
  }
}

std::map<ClassId, std::string> ReadClasses(const fs::path& path) {
  const json doc = ReadJson(path);
  std::map<ClassId, std::string> table;
  try {
    for (const json& entry : doc.at("classes")) {
      const int id = entry.at("id").get<int>();
      if (id < 0 || id > 0xFFFF) {
        Fail(ErrorCode::kMalformedFile,
             fmt::format("{}: class id {} outside 16-bit range", path.string(), id));
      }
      table[static_cast<ClassId>(id)] = entry.at("name").get<std::string>();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kMalformedFile, path.string() + ": " + e.what());
  }
  return table;
}

CameraModel ReadCamera(const fs::path& path) {
  const json doc = ReadJson(path);
  CameraModel cam;
  try {
    cam.fx = doc.at("fx").get<double>();
    cam.fy = doc.at("fy").get<double>();
    cam.cx = doc.at("cx").get<double>();
    cam.cy = doc.at("cy").get<double>();
    const auto rot = doc.at("rotation").get<std::vector<double>>();
    const auto trans = doc.at("translation").get<std::vector<double>>();
    if (rot.size() != 9 || trans.size() != 3) {
      Fail(ErrorCode::kMalformedMatrix,
           fmt::format("{}: rotation needs 9 values (got {}), translation 3 (got {})",
                       path.string(), rot.size(), trans.size()));
    }
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) cam.rotation(r, c) = rot[3 * r + c];
      cam.translation(r) = trans[r];
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kMalformedMatrix, path.string() + ": " + e.what());
  }
  if (!cam.rotation.allFinite() || !cam.translation.allFinite()) {
    Fail(ErrorCode::kMalformedMatrix, path.string() + ": non-finite entries");
  }
  if (OrthonormalityError(cam.rotation) > kOrthonormalTolerance) {
    Fail(ErrorCode::kMalformedMatrix, path.string() + ": rotation not orthonormal");
  }
  if (!(cam.fx > 0.0 && cam.fy > 0.0)) {
    Fail(ErrorCode::kMalformedFile, path.string() + ": focal lengths must be positive");
  }
  return cam;
}

PoseTransform ReadPose(const fs::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingFile, "cannot open " + path.string());
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      Fail(ErrorCode::kMalformedMatrix,
           path.string() + ": not a number: '" + token + "'");
    }
  }
  if (values.size() != 16) {
    Fail(ErrorCode::kMalformedMatrix,
         fmt::format("{}: expected 16 values, got {}", path.string(), values.size()));
  }
  PoseTransform pose;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) pose.matrix(r, c) = values[4 * r + c];
  }
  const Eigen::Matrix4d& m = pose.matrix;
  if (!m.allFinite() || m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 ||
      m(3, 3) != 1.0 ||
      OrthonormalityError(m.topLeftCorner<3, 3>()) > kOrthonormalTolerance) {
    Fail(ErrorCode::kMalformedMatrix,
         path.string() + ": not a rigid homogeneous transform");
  }
  return pose;
}

std::string FormatExact(double v) { return fmt::format("{}", v); }

}  // namespace

PointCloud ReadCloudBin(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kMissingFile, "cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  constexpr std::size_t kRecord = 4 * sizeof(float);
  if (bytes.size() % kRecord != 0) {
    Fail(ErrorCode::kMalformedFile,
         fmt::format("{}: size {} is not a multiple of 16 bytes", path.string(),
                     bytes.size()));
  }
  PointCloud cloud;
  cloud.points.reserve(bytes.size() / kRecord);
  for (std::size_t off = 0; off < bytes.size(); off += kRecord) {
    float xyzi[4];
    std::memcpy(xyzi, bytes.data() + off, kRecord);
    Eigen::Vector3d p(xyzi[0], xyzi[1], xyzi[2]);
    if (!p.allFinite()) {
      Fail(ErrorCode::kMalformedFile,
           fmt::format("{}: non-finite point at record {}", path.string(),
                       off / kRecord));
    }
    cloud.points.push_back(p);
  }
  return cloud;
}

void WriteCloudBin(const fs::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  for (const Eigen::Vector3d& p : cloud.points) {
    const float xyzi[4] = {static_cast<float>(p.x()), static_cast<float>(p.y()),
                           static_cast<float>(p.z()), 0.0f};
    out.write(reinterpret_cast<const char*>(xyzi), sizeof(xyzi));
  }
}

SceneFrame LoadScene(const fs::path& dir) {
  const fs::path rgb_path = dir / kRgbFile;
  const fs::path mask_path = dir / kMaskFile;
  const fs::path classes_path = dir / kClassesFile;
  for (const fs::path& required : {rgb_path, mask_path, classes_path}) {
    if (!fs::exists(required)) {
      Fail(ErrorCode::kMissingFile, "missing " + required.string());
    }
  }
  SceneFrame frame;
  frame.frame_id = fs::path(dir).lexically_normal().filename().string();
  if (frame.frame_id.empty()) {
    frame.frame_id = fs::path(dir).lexically_normal().parent_path().filename().string();
  }
  frame.rgb = internal::ReadRgbPng(rgb_path);
  frame.mask = internal::ReadMaskPng(mask_path);
  if (frame.rgb.width != frame.mask.width ||
      frame.rgb.height != frame.mask.height) {
    Fail(ErrorCode::kDimensionMismatch,
         fmt::format("{} is {}x{} but {} is {}x{}", mask_path.string(),
                     frame.mask.width, frame.mask.height, rgb_path.string(),
                     frame.rgb.width, frame.rgb.height));
  }
  frame.mask.class_table = ReadClasses(classes_path);
  for (ClassId id : frame.mask.class_ids) {
    if (!frame.mask.class_table.contains(id)) {
      Fail(ErrorCode::kUnknownClassId,
           fmt::format("{} contains class id {} not listed in {}",
                       mask_path.string(), id, classes_path.string()));
    }
  }
  if (fs::exists(dir / kCloudFile)) frame.cloud = ReadCloudBin(dir / kCloudFile);
  if (fs::exists(dir / kCameraFile)) frame.camera = ReadCamera(dir / kCameraFile);
  if (fs::exists(dir / kPoseFile)) frame.pose = ReadPose(dir / kPoseFile);
  return frame;
}

void WriteScene(const fs::path& dir, const SceneFrame& frame) {
  fs::create_directories(dir);
  internal::WriteRgbPng(dir / kRgbFile, frame.rgb);
  internal::WriteMaskPng(dir / kMaskFile, frame.mask);

  json classes = json::array();
  for (const auto& [id, name] : frame.mask.class_table) {
    classes.push_back({{"id", id}, {"name", name}});
  }
  std::ofstream(dir / kClassesFile) << json{{"classes", classes}}.dump(2) << "\n";

  if (frame.cloud) WriteCloudBin(dir / kCloudFile, *frame.cloud);
  if (frame.camera) {
    const CameraModel& cam = *frame.camera;
    json rot = json::array();
    json trans = json::array();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) rot.push_back(cam.rotation(r, c));
      trans.push_back(cam.translation(r));
    }
    json doc{{"fx", cam.fx}, {"fy", cam.fy}, {"cx", cam.cx}, {"cy", cam.cy},
             {"rotation", rot}, {"translation", trans}};
    std::ofstream(dir / kCameraFile) << doc.dump(2) << "\n";
  }
  if (frame.pose) {
    std::ofstream out(dir / kPoseFile);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        out << FormatExact(frame.pose->matrix(r, c)) << (c == 3 ? "\n" : " ");
      }
    }
  }
}

std::vector<fs::path> FindSceneDirs(const fs::path& root) {
  if (fs::exists(root / kMaskFile)) return {root};
  std::vector<fs::path> dirs;
  if (!fs::is_directory(root)) return dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / kMaskFile)) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

}  // namespace skyforge
