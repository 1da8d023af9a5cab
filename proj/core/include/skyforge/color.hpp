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

#ifndef SKYFORGE_COLOR_HPP_
#define SKYFORGE_COLOR_HPP_

#include <array>
#include <optional>
#include <string>

#include "skyforge/scene.hpp"

namespace skyforge {

enum class BaseColor {
  kRed = 0,
  kOrange,
  kYellow,
  kGreen,
  kCyan,
  kBlue,
  kPurple,
  kPink,
  kBrown,
  kGray,
  kWhite,
  kBlack,
};
inline constexpr int kBaseColorCount = 12;

std::string_view BaseColorName(BaseColor c);

enum class ColorModifier { kLight, kDark };

struct ColorDescriptor {
  BaseColor base = BaseColor::kGray;
  std::optional<ColorModifier> modifier;  // never set for white/black

  // "light blue", "red", "dark green".
  std::string ToString() const;

  friend bool operator==(const ColorDescriptor&, const ColorDescriptor&) = default;
};

struct Hsv {
  double h = 0.0;  // degrees [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

Hsv RgbToHsv(Rgb c);
// HSL lightness, (max + min) / 2 in [0, 1].
double Lightness(Rgb c);

// Quantisation thresholds and the hue-bin name table. Every pixel is
// classified in this order:
//   v < black_value                              -> black
//   v > white_value and s < white_saturation     -> white
//   s < gray_saturation                          -> gray
//   otherwise hue bin floor((h + 15) / 30) mod 12 -> hue_names[bin],
//     with orange pixels of v < brown_value reported as brown.
// The modifier comes from HSL lightness: > light_lightness is "light",
// < dark_lightness is "dark".
struct ColorConfig {
  double black_value = 0.2;
  double white_value = 0.85;
  double white_saturation = 0.15;
  double gray_saturation = 0.2;
  double brown_value = 0.75;
  double light_lightness = 0.7;
  double dark_lightness = 0.4;
  std::array<BaseColor, 12> hue_names = {
      BaseColor::kRed,    BaseColor::kOrange, BaseColor::kYellow,
      BaseColor::kGreen,  BaseColor::kGreen,  BaseColor::kGreen,
      BaseColor::kCyan,   BaseColor::kBlue,   BaseColor::kBlue,
      BaseColor::kPurple, BaseColor::kPurple, BaseColor::kPink};
};

// Lightness levels in tie-break order: unmodified first.
enum class LightnessLevel { kMid = 0, kLight = 1, kDark = 2 };

struct PixelColorClass {
  BaseColor base;
  LightnessLevel level;
};

PixelColorClass ClassifyPixel(Rgb c, const ColorConfig& cfg = {});

// Counts per (base colour, lightness level).
using ColorHistogram = std::array<std::array<std::size_t, 3>, kBaseColorCount>;

// Majority base colour (ties -> lower BaseColor index), then majority
// lightness level within it (ties -> lower LightnessLevel index).
ColorDescriptor DescriptorFromHistogram(const ColorHistogram& hist);

ColorHistogram BuildHistogram(const RgbImage& rgb, const PixelSet& pixels,
                              const ColorConfig& cfg = {});

ColorDescriptor DominantColor(const SceneFrame& frame,
                              const ObjectInstance& inst,
                              const ColorConfig& cfg = {});

// Descriptor of a uniformly coloured region.
ColorDescriptor DescribeUniform(Rgb c, const ColorConfig& cfg = {});

}  // namespace skyforge

#endif  // SKYFORGE_COLOR_HPP_
