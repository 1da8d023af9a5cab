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

#ifndef SKYFORGE_SRC_PNG_IO_HPP_
#define SKYFORGE_SRC_PNG_IO_HPP_

#include <filesystem>

#include "skyforge/scene.hpp"

namespace skyforge::internal {

// Any colour type is converted to 8-bit RGB.
RgbImage ReadRgbPng(const std::filesystem::path& path);
void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image);

// Single-channel 8- or 16-bit PNG of class ids. The class table is left empty.
SemanticMask ReadMaskPng(const std::filesystem::path& path);
// Always written as 16-bit greyscale.
void WriteMaskPng(const std::filesystem::path& path, const SemanticMask& mask);

}  // namespace skyforge::internal

#endif  // SKYFORGE_SRC_PNG_IO_HPP_
