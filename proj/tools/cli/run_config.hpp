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

#ifndef SKYFORGE_TOOLS_CLI_RUN_CONFIG_HPP_
#define SKYFORGE_TOOLS_CLI_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skyforge/qa_generation.hpp"
#include "skyforge/tasks.hpp"

namespace skyforge::cli {

// Bad flag, config key or value. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::filesystem::path> scenes;
  std::filesystem::path out;
  std::vector<Task> tasks{kAllTasks.begin(), kAllTasks.end()};
  std::uint64_t seed = 0;
  std::size_t size = 100;  // curate target
  int concurrency = 1;

  // Inputs of curate / evaluate / score / reward.
  std::filesystem::path dataset;
  std::filesystem::path bench;
  std::filesystem::path predictions;
  std::filesystem::path input;
  std::filesystem::path report;

  // Endpoint settings.
  std::string endpoint;
  std::string model;
  std::string judge_model;
  std::string mock;  // "", "oracle" or "random"
  double timeout = 60.0;
  bool complete_pending = false;

  // Generation.
  std::optional<ClassId> background_class = ClassId{0};
  std::filesystem::path function_table;
  std::filesystem::path hazard_table;
  int free_space_min_area = 500;
  double relation_min_distance = 50.0;
  int landing_min_area = 1000;
  double height_tolerance = 0.5;
  int choice_options = 4;
  int max_records_per_frame = 4;

  // Rewards.
  double point_reward_radius = 50.0;
  double beta = 0.01;

  // Synth.
  int count = 5;
  int width = 128;
  int height = 128;
  double tilt = 0.0;
};

// Keys accepted in config files and as --key flags.
const std::vector<std::string>& ConfigKeys();

// Parses "key = value" lines; blank lines and '#' comments are skipped.
// Throws ConfigError on syntax errors or unknown keys.
std::map<std::string, std::string> ParseConfigText(const std::string& text);

// Applies one setting. Relative paths resolve against `base_dir`. Throws
// ConfigError.
void ApplySetting(RunConfig& config, const std::string& key, const std::string& value,
                  const std::filesystem::path& base_dir = {});

void LoadConfigFile(RunConfig& config, const std::filesystem::path& path);

// Positive thresholds, known tasks, sane counts. Throws ConfigError.
void ValidateConfig(const RunConfig& config);

// Sorted key=value rendering; its FNV-1a hash identifies a run.
std::string CanonicalConfig(const RunConfig& config);
std::string ConfigHash(const RunConfig& config);

// Generation settings derived from the config, tables loaded from disk.
GenerationConfig MakeGenerationConfig(const RunConfig& config);

}  // namespace skyforge::cli

#endif  // SKYFORGE_TOOLS_CLI_RUN_CONFIG_HPP_
