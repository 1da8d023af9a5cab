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

#include "skyforge/color.hpp"

#include <algorithm>
#include <cmath>

namespace skyforge {

std::string_view BaseColorName(BaseColor c) {
  switch (c) {
    case BaseColor::kRed: return "red";
    case BaseColor::kOrange: return "orange";
    case BaseColor::kYellow: return "yellow";
    case BaseColor::kGreen: return "green";
    case BaseColor::kCyan: return "cyan";
    case BaseColor::kBlue: return "blue";
    case BaseColor::kPurple: return "purple";
    case BaseColor::kPink: return "pink";
    case BaseColor::kBrown: return "brown";
    case BaseColor::kGray: return "gray";
    case BaseColor::kWhite: return "white";
    case BaseColor::kBlack: return "black";
  }
  return "gray";
}

std::string ColorDescriptor::ToString() const {
  std::string out;
  if (modifier) out = *modifier == ColorModifier::kLight ? "light " : "dark ";
  out += BaseColorName(base);
  return out;
}

Hsv RgbToHsv(Rgb c) {
  const double r = c.r / 255.0;
  const double g = c.g / 255.0;
  const double b = c.b / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0 ? delta / mx : 0.0;
  if (delta > 0.0) {
    double h;
    if (mx == r) {
      h = std::fmod((g - b) / delta, 6.0);
    } else if (mx == g) {
      h = (b - r) / delta + 2.0;
    } else {
      h = (r - g) / delta + 4.0;
    }
    h *= 60.0;
    if (h < 0.0) h += 360.0;
    out.h = h;
  }
  return out;
}

double Lightness(Rgb c) {
  const int mx = std::max({c.r, c.g, c.b});
  const int mn = std::min({c.r, c.g, c.b});
  return (mx + mn) / 510.0;
}

PixelColorClass ClassifyPixel(Rgb c, const ColorConfig& cfg) {
  const Hsv hsv = RgbToHsv(c);
  const double l = Lightness(c);
  const LightnessLevel level = l > cfg.light_lightness  ? LightnessLevel::kLight
                               : l < cfg.dark_lightness ? LightnessLevel::kDark
                                                        : LightnessLevel::kMid;
  if (hsv.v < cfg.black_value) return {BaseColor::kBlack, LightnessLevel::kMid};
  if (hsv.v > cfg.white_value && hsv.s < cfg.white_saturation) {
    return {BaseColor::kWhite, LightnessLevel::kMid};
  }
  if (hsv.s < cfg.gray_saturation) return {BaseColor::kGray, level};
  const int bin = static_cast<int>(std::floor((hsv.h + 15.0) / 30.0)) % 12;
  BaseColor base = cfg.hue_names[bin];
  if (base == BaseColor::kOrange && hsv.v < cfg.brown_value) {
    base = BaseColor::kBrown;
  }
  return {base, level};
}

ColorDescriptor DescriptorFromHistogram(const ColorHistogram& hist) {
  int best = 0;
  std::size_t best_count = 0;
  for (int i = 0; i < kBaseColorCount; ++i) {
    const std::size_t total = hist[i][0] + hist[i][1] + hist[i][2];
    if (total > best_count) {
      best = i;
      best_count = total;
    }
  }
  ColorDescriptor out;
  out.base = static_cast<BaseColor>(best);
  if (out.base == BaseColor::kWhite || out.base == BaseColor::kBlack) return out;
  int level = 0;
  for (int k = 1; k < 3; ++k) {
    if (hist[best][k] > hist[best][level]) level = k;
  }
  switch (static_cast<LightnessLevel>(level)) {
    case LightnessLevel::kLight: out.modifier = ColorModifier::kLight; break;
    case LightnessLevel::kDark: out.modifier = ColorModifier::kDark; break;
    case LightnessLevel::kMid: break;
  }
  return out;
}

ColorHistogram BuildHistogram(const RgbImage& rgb, const PixelSet& pixels,
                              const ColorConfig& cfg) {
  ColorHistogram hist{};
  for (const Pixel& p : pixels) {
    const PixelColorClass cls = ClassifyPixel(rgb.At(p.x, p.y), cfg);
    ++hist[static_cast<int>(cls.base)][static_cast<int>(cls.level)];
  }
  return hist;
}

ColorDescriptor DominantColor(const SceneFrame& frame, const ObjectInstance& inst,
                              const ColorConfig& cfg) {
  return DescriptorFromHistogram(BuildHistogram(frame.rgb, inst.pixels, cfg));
}

ColorDescriptor DescribeUniform(Rgb c, const ColorConfig& cfg) {
  ColorHistogram hist{};
  const PixelColorClass cls = ClassifyPixel(c, cfg);
  hist[static_cast<int>(cls.base)][static_cast<int>(cls.level)] = 1;
  return DescriptorFromHistogram(hist);
}

}  // namespace skyforge
