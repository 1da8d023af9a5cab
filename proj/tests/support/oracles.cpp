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

#include "oracles.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <deque>

namespace skyforge::testing {

std::vector<OracleComponent> FloodFillComponents(const SemanticMask& mask, bool eight,
                                                 std::optional<ClassId> skip) {
  const int w = mask.width, h = mask.height;
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  std::vector<OracleComponent> out;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const ClassId id = mask.class_ids[static_cast<std::size_t>(y) * w + x];
      if (skip && id == *skip) continue;
      if (label[static_cast<std::size_t>(y) * w + x] >= 0) continue;
      const int current = static_cast<int>(out.size());
      OracleComponent comp;
      comp.class_id = id;
      std::deque<Pixel> queue{{x, y}};
      label[static_cast<std::size_t>(y) * w + x] = current;
      while (!queue.empty()) {
        const Pixel p = queue.front();
        queue.pop_front();
        comp.pixels.push_back(p);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!eight && dx != 0 && dy != 0) continue;
            const int nx = p.x + dx, ny = p.y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
            if (label[ni] >= 0 || mask.class_ids[ni] != id) continue;
            label[ni] = current;
            queue.push_back({nx, ny});
          }
        }
      }
      std::sort(comp.pixels.begin(), comp.pixels.end(), [](const Pixel& a, const Pixel& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
      });
      comp.bbox = {w, h, -1, -1};
      double sx = 0, sy = 0;
      for (const Pixel& p : comp.pixels) {
        comp.bbox.x1 = std::min(comp.bbox.x1, p.x);
        comp.bbox.y1 = std::min(comp.bbox.y1, p.y);
        comp.bbox.x2 = std::max(comp.bbox.x2, p.x);
        comp.bbox.y2 = std::max(comp.bbox.y2, p.y);
        sx += p.x;
        sy += p.y;
      }
      comp.cx = sx / static_cast<double>(comp.pixels.size());
      comp.cy = sy / static_cast<double>(comp.pixels.size());
      out.push_back(std::move(comp));
    }
  }
  return out;
}

double EnumeratedIou(const Box& a, const Box& b) {
  long inter = 0;
  for (int y = a.y1; y <= a.y2; ++y) {
    for (int x = a.x1; x <= a.x2; ++x) {
      if (x >= b.x1 && x <= b.x2 && y >= b.y1 && y <= b.y2) ++inter;
    }
  }
  const long area_a = static_cast<long>(a.x2 - a.x1 + 1) * (a.y2 - a.y1 + 1);
  const long area_b = static_cast<long>(b.x2 - b.x1 + 1) * (b.y2 - b.y1 + 1);
  return static_cast<double>(inter) / static_cast<double>(area_a + area_b - inter);
}

Eigen::Vector4d MatMul4(const Eigen::Matrix4d& m, const Eigen::Vector4d& v) {
  Eigen::Vector4d out;
  for (int r = 0; r < 4; ++r) {
    double acc = 0.0;
    for (int c = 0; c < 4; ++c) acc += m(r, c) * v(c);
    out(r) = acc;
  }
  return out;
}

SemanticMask RandomMask(std::mt19937_64& gen, int width, int height, int classes) {
  SemanticMask mask(width, height, 0);
  for (int c = 0; c < classes; ++c) mask.class_table[static_cast<ClassId>(c)] = "c" + std::to_string(c);
  std::uniform_int_distribution<int> cls(1, classes - 1);
  std::uniform_int_distribution<int> px(0, width - 1), py(0, height - 1);
  std::uniform_int_distribution<int> steps(5, width * height / 6);
  std::uniform_int_distribution<int> dir(0, 3);
  std::uniform_int_distribution<int> walks(2, 10);
  const int n = walks(gen);
  for (int k = 0; k < n; ++k) {
    const ClassId id = static_cast<ClassId>(cls(gen));
    int x = px(gen), y = py(gen);
    const int len = steps(gen);
    for (int s = 0; s < len; ++s) {
      mask.Set(x, y, id);
      switch (dir(gen)) {
        case 0: x = std::min(width - 1, x + 1); break;
        case 1: x = std::max(0, x - 1); break;
        case 2: y = std::min(height - 1, y + 1); break;
        default: y = std::max(0, y - 1); break;
      }
    }
  }
  return mask;
}

Box RandomBox(std::mt19937_64& gen, int extent) {
  std::uniform_int_distribution<int> coord(0, extent);
  const int x1 = coord(gen), x2 = coord(gen), y1 = coord(gen), y2 = coord(gen);
  return {std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
}

Eigen::Matrix3d RandomRotation(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(gen), n(gen), n(gen), n(gen));
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace skyforge::testing
