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

#ifndef SKYFORGE_CURATE_HPP_
#define SKYFORGE_CURATE_HPP_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "skyforge/qa_record.hpp"

namespace skyforge {

struct CurateConfig {
  std::size_t target = 100;
  std::uint64_t seed = 0;
};

struct CurateResult {
  std::vector<QaRecord> bench;  // sorted by id
  std::vector<QaRecord> train;  // records sharing no frame with the bench
  std::size_t dropped = 0;      // unselected records of bench frames
  std::vector<std::string> warnings;
};

// Frames linked by a multi-frame record form one group. Groups are visited
// in seeded order; each task gets an equal share of `target`, and a first
// pass takes at most one record per (group, task), preferring the class
// least represented so far. Remaining slots come from bench groups first,
// then new groups. Every other record of a bench group is dropped, so bench
// and train never share a frame. Pending records are never benchmarked.
// Throws InsufficientRecords when fewer than `target` records are eligible.
CurateResult CurateBenchmark(std::span<const QaRecord> records,
                             const CurateConfig& config);

std::set<std::string> FrameIdsOf(std::span<const QaRecord> records);

}  // namespace skyforge

#endif  // SKYFORGE_CURATE_HPP_
