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

#include "skyforge/types.hpp"

#include <limits>

namespace skyforge {

PixelSet::PixelSet(std::vector<Pixel> pixels) : pixels_(std::move(pixels)) {
  std::sort(pixels_.begin(), pixels_.end(), RowMajorLess{});
  pixels_.erase(std::unique(pixels_.begin(), pixels_.end()), pixels_.end());
}

Box PixelSet::BoundingBox() const {
  Box box{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
          std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
  for (const Pixel& p : pixels_) {
    box.x1 = std::min(box.x1, p.x);
    box.y1 = std::min(box.y1, p.y);
    box.x2 = std::max(box.x2, p.x);
    box.y2 = std::max(box.y2, p.y);
  }
  return box;
}

Point2 PixelSet::Centroid() const {
  double sx = 0.0;
  double sy = 0.0;
  for (const Pixel& p : pixels_) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(pixels_.size());
  return {sx / n, sy / n};
}

PixelSet PixelSet::Union(const PixelSet& other) const {
  std::vector<Pixel> merged;
  merged.reserve(pixels_.size() + other.pixels_.size());
  std::set_union(pixels_.begin(), pixels_.end(), other.pixels_.begin(),
                 other.pixels_.end(), std::back_inserter(merged),
                 RowMajorLess{});
  PixelSet out;
  out.pixels_ = std::move(merged);
  return out;
}

std::vector<PixelRun> ToRuns(const PixelSet& set) {
  std::vector<PixelRun> runs;
  for (const Pixel& p : set) {
    if (!runs.empty() && runs.back().y == p.y && runs.back().x_end + 1 == p.x) {
      runs.back().x_end = p.x;
    } else {
      runs.push_back({p.y, p.x, p.x});
    }
  }
  return runs;
}

PixelSet FromRuns(std::span<const PixelRun> runs) {
  std::vector<Pixel> pixels;
  for (const PixelRun& run : runs) {
    for (int x = run.x_begin; x <= run.x_end; ++x) pixels.push_back({x, run.y});
  }
  return PixelSet(std::move(pixels));
}

}  // namespace skyforge
