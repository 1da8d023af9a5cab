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

#include "skyforge/curate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "fmt/format.h"
#include "skyforge/error.hpp"
#include "skyforge/rng.hpp"

namespace skyforge {
namespace {

class UnionFind {
 public:
  std::size_t Add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Unite(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Record index -> group index, groups numbered by their smallest frame id.
std::vector<std::size_t> GroupRecords(std::span<const QaRecord> records,
                                      std::size_t& group_count) {
  std::map<std::string, std::size_t> frame_node;
  UnionFind uf;
  for (const QaRecord& r : records) {
    for (const std::string& f : r.frame_ids) {
      if (frame_node.emplace(f, 0).second) frame_node[f] = uf.Add();
    }
  }
  for (const QaRecord& r : records) {
    for (std::size_t i = 1; i < r.frame_ids.size(); ++i) {
      uf.Unite(frame_node[r.frame_ids[0]], frame_node[r.frame_ids[i]]);
    }
  }
  // frame_node iterates in frame-id order, so first sight of a root gives
  // the group's smallest frame id.
  std::map<std::size_t, std::size_t> root_group;
  for (const auto& [frame, node] : frame_node) {
    root_group.emplace(uf.Find(node), root_group.size());
  }
  group_count = root_group.size();
  std::vector<std::size_t> out(records.size(), 0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].frame_ids.empty()) {
      Fail(ErrorCode::kMalformedFile, fmt::format("record {} has no frame", records[i].id));
    }
    out[i] = root_group.at(uf.Find(frame_node.at(records[i].frame_ids[0])));
  }
  return out;
}

int PrimaryClass(const QaRecord& r) {
  return r.class_ids.empty() ? -1 : static_cast<int>(r.class_ids.front());
}

}  // namespace

CurateResult CurateBenchmark(std::span<const QaRecord> records,
                             const CurateConfig& config) {
  if (config.target == 0) Fail(ErrorCode::kInvalidArgument, "target must be positive");
  std::size_t group_count = 0;
  const std::vector<std::size_t> group_of = GroupRecords(records, group_count);

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].pending) eligible.push_back(i);
  }
  if (eligible.size() < config.target) {
    Fail(ErrorCode::kInsufficientRecords,
         fmt::format("{} eligible records, target {}", eligible.size(), config.target));
  }
  // Candidates per group and task, in id order.
  std::sort(eligible.begin(), eligible.end(),
            [&](std::size_t a, std::size_t b) { return records[a].id < records[b].id; });
  std::map<Task, std::map<std::size_t, std::vector<std::size_t>>> by_task_group;
  for (std::size_t i : eligible) by_task_group[records[i].task][group_of[i]].push_back(i);

  CurateResult result;
  std::vector<Task> tasks;
  for (const auto& [task, groups] : by_task_group) tasks.push_back(task);
  if (tasks.size() == 1) {
    result.warnings.push_back(
        fmt::format("only task '{}' is present; bench is single-task", TaskName(tasks[0])));
  }
  std::map<Task, std::size_t> quota;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    quota[tasks[t]] = config.target / tasks.size() + (t < config.target % tasks.size() ? 1 : 0);
  }

  std::vector<std::size_t> order(group_count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(config.seed, "curate"));
  rng.Shuffle(order);

  std::vector<bool> selected(records.size(), false);
  std::vector<bool> bench_group(group_count, false);
  std::map<Task, std::size_t> taken;
  std::map<Task, std::map<int, std::size_t>> class_seen;
  std::size_t total = 0;

  auto take = [&](std::size_t i) {
    selected[i] = true;
    bench_group[group_of[i]] = true;
    ++taken[records[i].task];
    ++class_seen[records[i].task][PrimaryClass(records[i])];
    ++total;
  };

  // Pass 1: one record per (group, task).
  for (std::size_t g : order) {
    for (Task task : tasks) {
      if (taken[task] >= quota[task]) continue;
      auto it = by_task_group[task].find(g);
      if (it == by_task_group[task].end()) continue;
      std::optional<std::size_t> best;
      for (std::size_t i : it->second) {
        if (!best || class_seen[task][PrimaryClass(records[i])] <
                         class_seen[task][PrimaryClass(records[*best])]) {
          best = i;
        }
      }
      take(*best);
    }
  }

  // Pass 2: fill a task's shortfall from bench groups, then from new groups.
  // With `task` unset any task may fill the remaining slots.
  auto fill = [&](std::optional<Task> only, std::size_t& need) {
    for (int phase = 0; phase < 2 && need > 0; ++phase) {
      for (std::size_t g : order) {
        if (need == 0) break;
        if ((phase == 0) != bench_group[g]) continue;
        for (Task task : tasks) {
          if (only && task != *only) continue;
          auto it = by_task_group[task].find(g);
          if (it == by_task_group[task].end()) continue;
          for (std::size_t i : it->second) {
            if (need == 0) break;
            if (selected[i]) continue;
            take(i);
            --need;
          }
        }
      }
    }
  };
  for (Task task : tasks) {
    std::size_t need = quota[task] - taken[task];
    if (need == 0) continue;
    fill(task, need);
    if (need > 0) {
      result.warnings.push_back(fmt::format("task '{}' filled {} of {} slots", TaskName(task),
                                            taken[task], quota[task]));
    }
  }
  if (total < config.target) {
    std::size_t need = config.target - total;
    fill(std::nullopt, need);
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    if (selected[i]) {
      result.bench.push_back(records[i]);
    } else if (bench_group[group_of[i]]) {
      ++result.dropped;
    } else {
      result.train.push_back(records[i]);
    }
  }
  auto by_id = [](const QaRecord& a, const QaRecord& b) { return a.id < b.id; };
  std::sort(result.bench.begin(), result.bench.end(), by_id);
  std::sort(result.train.begin(), result.train.end(), by_id);
  return result;
}

std::set<std::string> FrameIdsOf(std::span<const QaRecord> records) {
  std::set<std::string> ids;
  for (const QaRecord& r : records) ids.insert(r.frame_ids.begin(), r.frame_ids.end());
  return ids;
}

}  // namespace skyforge
