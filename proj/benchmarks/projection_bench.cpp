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

#include <benchmark/benchmark.h>

#include "skyforge/geometry.hpp"
#include "skyforge/projection.hpp"
#include "skyforge/synth.hpp"

namespace skyforge {
namespace {

void BM_ProjectCloud(benchmark::State& state) {
  const SceneFrame frame = SynthScene(RandomSynthSpec(4, 256, 256)).first;
  for (auto _ : state) {
    const auto cam = LidarToCamera(*frame.cloud, *frame.camera);
    benchmark::DoNotOptimize(ProjectToImage(cam, *frame.camera, frame.width(), frame.height()));
  }
  state.SetItemsProcessed(state.iterations() * frame.cloud->points.size());
}
BENCHMARK(BM_ProjectCloud);

void BM_ObjectDepths(benchmark::State& state) {
  const SceneFrame frame = SynthScene(RandomSynthSpec(5, 256, 256)).first;
  const auto instances = ExtractInstances(frame.mask, Connectivity::kFour, ClassId{0});
  for (auto _ : state) {
    const DepthIndex index(frame);
    for (const ObjectInstance& inst : instances) benchmark::DoNotOptimize(index.MeanDepth(inst));
  }
}
BENCHMARK(BM_ObjectDepths);

}  // namespace
}  // namespace skyforge
