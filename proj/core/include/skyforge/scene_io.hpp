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

#ifndef SKYFORGE_SCENE_IO_HPP_
#define SKYFORGE_SCENE_IO_HPP_

#include <filesystem>
#include <vector>

#include "skyforge/scene.hpp"

namespace skyforge {

// Scene directory layout:
//   rgb.png       8-bit RGB
//   mask.png      single-channel 16-bit class ids
//   classes.json  {"classes": [{"id": int, "name": str}, ...]}
//   cloud.bin     optional; little-endian float32 (x, y, z, intensity) records
//   camera.json   optional; {"fx","fy","cx","cy","rotation":[9],"translation":[3]}
//   pose.txt      optional; 16 whitespace-separated decimals, row-major
inline constexpr const char* kRgbFile = "rgb.png";
inline constexpr const char* kMaskFile = "mask.png";
inline constexpr const char* kClassesFile = "classes.json";
inline constexpr const char* kCloudFile = "cloud.bin";
inline constexpr const char* kCameraFile = "camera.json";
inline constexpr const char* kPoseFile = "pose.txt";

// frame_id is the directory's file name. Throws Error with MissingFile,
// DimensionMismatch, UnknownClassId, MalformedMatrix or MalformedFile; the
// message names the offending file.
SceneFrame LoadScene(const std::filesystem::path& dir);

// Writes every populated field. Cloud coordinates are narrowed to float32.
void WriteScene(const std::filesystem::path& dir, const SceneFrame& frame);

// A root is either a scene directory itself or a directory whose immediate
// children are scene directories. Result is sorted by path.
std::vector<std::filesystem::path> FindSceneDirs(
    const std::filesystem::path& root);

PointCloud ReadCloudBin(const std::filesystem::path& path);
void WriteCloudBin(const std::filesystem::path& path, const PointCloud& cloud);

}  // namespace skyforge

#endif  // SKYFORGE_SCENE_IO_HPP_
