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
#include "skyforge/rng.hpp"
#include "skyforge/synth.hpp"

namespace skyforge {
namespace {

void BM_ExtractInstances(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SceneFrame frame = SynthScene(RandomSynthSpec(1, side, side)).first;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExtractInstances(frame.mask, Connectivity::kFour, ClassId{0}));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ExtractInstances)->Arg(128)->Arg(512);

void BM_ExtractFreeSpace(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SceneFrame frame = SynthScene(RandomSynthSpec(2, side, side)).first;
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(ExtractFreeSpace(frame.mask, ClassId{0}, rng));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ExtractFreeSpace)->Arg(128)->Arg(512);

}  // namespace
}  // namespace skyforge
