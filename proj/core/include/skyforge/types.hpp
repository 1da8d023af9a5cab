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

#ifndef SKYFORGE_TYPES_HPP_
#define SKYFORGE_TYPES_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace skyforge {

using ClassId = std::uint16_t;

struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Row-major order: y first, then x.
struct RowMajorLess {
  bool operator()(const Pixel& a, const Pixel& b) const {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Inclusive pixel box: (x1,y1) and (x2,y2) are both covered.
struct Box {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  friend bool operator==(const Box&, const Box&) = default;

  Box Normalized() const {
    return {std::min(x1, x2), std::min(y1, y2), std::max(x1, x2),
            std::max(y1, y2)};
  }
  std::int64_t Width() const { return std::int64_t{x2} - x1 + 1; }
  std::int64_t Height() const { return std::int64_t{y2} - y1 + 1; }
  std::int64_t Area() const { return Width() * Height(); }
  bool Contains(const Pixel& p) const {
    return p.x >= x1 && p.x <= x2 && p.y >= y1 && p.y <= y2;
  }
};

// Sorted, duplicate-free set of pixels with logarithmic membership lookup.
class PixelSet {
 public:
  PixelSet() = default;
  explicit PixelSet(std::vector<Pixel> pixels);

  bool Contains(const Pixel& p) const {
    return std::binary_search(pixels_.begin(), pixels_.end(), p,
                              RowMajorLess{});
  }
  bool Contains(int x, int y) const { return Contains(Pixel{x, y}); }

  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }
  const Pixel& operator[](std::size_t i) const { return pixels_[i]; }
  auto begin() const { return pixels_.begin(); }
  auto end() const { return pixels_.end(); }
  std::span<const Pixel> view() const { return pixels_; }

  // Tight hull; undefined for an empty set.
  Box BoundingBox() const;
  Point2 Centroid() const;

  PixelSet Union(const PixelSet& other) const;

  friend bool operator==(const PixelSet&, const PixelSet&) = default;

 private:
  std::vector<Pixel> pixels_;
};

// Horizontal run [x_begin, x_end] on row y; the compact on-disk form of a
// PixelSet used in ground-truth payloads.
struct PixelRun {
  int y = 0;
  int x_begin = 0;
  int x_end = 0;

  friend bool operator==(const PixelRun&, const PixelRun&) = default;
};

std::vector<PixelRun> ToRuns(const PixelSet& set);
PixelSet FromRuns(std::span<const PixelRun> runs);

}  // namespace skyforge

#endif  // SKYFORGE_TYPES_HPP_
