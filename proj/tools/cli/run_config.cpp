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

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "fmt/format.h"
#include "fmt/ranges.h"
#include "nlohmann/json.hpp"
#include "skyforge/rng.hpp"

namespace skyforge::cli {
namespace fs = std::filesystem;

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid number", key, value));
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, value));
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

fs::path Resolve(const std::string& value, const fs::path& base) {
  fs::path p(value);
  if (value.empty() || p.is_absolute() || base.empty()) return p;
  return (base / p).lexically_normal();
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&,
                                  const fs::path&)>;

template <typename T>
Setter Number(T RunConfig::*field) {
  return [field](RunConfig& c, const std::string& k, const std::string& v, const fs::path&) {
    c.*field = ParseNumber<T>(k, v);
  };
}

Setter Path(fs::path RunConfig::*field) {
  return [field](RunConfig& c, const std::string&, const std::string& v, const fs::path& base) {
    c.*field = Resolve(v, base);
  };
}

Setter Text(std::string RunConfig::*field) {
  return [field](RunConfig& c, const std::string&, const std::string& v, const fs::path&) {
    c.*field = v;
  };
}

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> kSetters = {
      {"scenes",
       [](RunConfig& c, const std::string&, const std::string& v, const fs::path& base) {
         c.scenes.clear();
         for (const std::string& s : SplitList(v)) c.scenes.push_back(Resolve(s, base));
       }},
      {"out", Path(&RunConfig::out)},
      {"tasks",
       [](RunConfig& c, const std::string& k, const std::string& v, const fs::path&) {
         std::vector<Task> tasks;
         for (const std::string& name : SplitList(v)) {
           if (name == "all") {
             tasks.assign(kAllTasks.begin(), kAllTasks.end());
             continue;
           }
           const auto task = TaskFromName(name);
           if (!task) throw ConfigError(fmt::format("{}: unknown task '{}'", k, name));
           if (std::find(tasks.begin(), tasks.end(), *task) == tasks.end()) {
             tasks.push_back(*task);
           }
         }
         if (tasks.empty()) throw ConfigError(fmt::format("{}: empty task list", k));
         std::sort(tasks.begin(), tasks.end());
         c.tasks = tasks;
       }},
      {"seed", Number(&RunConfig::seed)},
      {"size", Number(&RunConfig::size)},
      {"concurrency", Number(&RunConfig::concurrency)},
      {"dataset", Path(&RunConfig::dataset)},
      {"bench", Path(&RunConfig::bench)},
      {"predictions", Path(&RunConfig::predictions)},
      {"input", Path(&RunConfig::input)},
      {"report", Path(&RunConfig::report)},
      {"endpoint", Text(&RunConfig::endpoint)},
      {"model", Text(&RunConfig::model)},
      {"judge_model", Text(&RunConfig::judge_model)},
      {"mock",
       [](RunConfig& c, const std::string& k, const std::string& v, const fs::path&) {
         if (v != "oracle" && v != "random" && !v.empty()) {
           throw ConfigError(fmt::format("{}: expected oracle or random, got '{}'", k, v));
         }
         c.mock = v;
       }},
      {"timeout", Number(&RunConfig::timeout)},
      {"complete_pending",
       [](RunConfig& c, const std::string& k, const std::string& v, const fs::path&) {
         c.complete_pending = ParseBool(k, v);
       }},
      {"background_class",
       [](RunConfig& c, const std::string& k, const std::string& v, const fs::path&) {
         if (v == "none") {
           c.background_class.reset();
         } else {
           c.background_class = ParseNumber<ClassId>(k, v);
         }
       }},
      {"function_table", Path(&RunConfig::function_table)},
      {"hazard_table", Path(&RunConfig::hazard_table)},
      {"free_space_min_area", Number(&RunConfig::free_space_min_area)},
      {"relation_min_distance", Number(&RunConfig::relation_min_distance)},
      {"landing_min_area", Number(&RunConfig::landing_min_area)},
      {"height_tolerance", Number(&RunConfig::height_tolerance)},
      {"choice_options", Number(&RunConfig::choice_options)},
      {"max_records_per_frame", Number(&RunConfig::max_records_per_frame)},
      {"point_reward_radius", Number(&RunConfig::point_reward_radius)},
      {"beta", Number(&RunConfig::beta)},
      {"count", Number(&RunConfig::count)},
      {"width", Number(&RunConfig::width)},
      {"height", Number(&RunConfig::height)},
      {"tilt", Number(&RunConfig::tilt)},
  };
  return kSetters;
}

std::string PathList(const std::vector<fs::path>& paths) {
  std::string out;
  for (const fs::path& p : paths) out += (out.empty() ? "" : ",") + p.string();
  return out;
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> kKeys = [] {
    std::vector<std::string> keys;
    for (const auto& [k, setter] : Setters()) keys.push_back(k);
    return keys;
  }();
  return kKeys;
}

std::map<std::string, std::string> ParseConfigText(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  for (int lineno = 1; std::getline(ss, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected key = value", lineno));
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    if (!Setters().contains(key)) {
      throw ConfigError(fmt::format("line {}: unknown key '{}'", lineno, key));
    }
    out[key] = Trim(std::string_view(line).substr(eq + 1));
  }
  return out;
}

void ApplySetting(RunConfig& config, const std::string& key, const std::string& value,
                  const fs::path& base_dir) {
  auto it = Setters().find(key);
  if (it == Setters().end()) throw ConfigError(fmt::format("unknown setting '{}'", key));
  it->second(config, key, value, base_dir);
}

void LoadConfigFile(RunConfig& config, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  std::map<std::string, std::string> settings;
  try {
    settings = ParseConfigText(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  for (const auto& [k, v] : settings) ApplySetting(config, k, v, path.parent_path());
}

void ValidateConfig(const RunConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(c.concurrency >= 1 && c.concurrency <= 256, "concurrency must be in [1, 256]");
  require(c.size > 0, "size must be positive");
  require(c.free_space_min_area > 0, "free_space_min_area must be positive");
  require(c.relation_min_distance > 0, "relation_min_distance must be positive");
  require(c.landing_min_area > 0, "landing_min_area must be positive");
  require(c.height_tolerance > 0, "height_tolerance must be positive");
  require(c.choice_options >= 4 && c.choice_options <= 6, "choice_options must be in [4, 6]");
  require(c.max_records_per_frame > 0, "max_records_per_frame must be positive");
  require(c.point_reward_radius > 0, "point_reward_radius must be positive");
  require(c.beta >= 0, "beta must be non-negative");
  require(c.timeout > 0, "timeout must be positive");
  require(c.count > 0, "count must be positive");
  require(c.width > 0 && c.height > 0, "width and height must be positive");
  require(!c.tasks.empty(), "task list is empty");
}

std::string CanonicalConfig(const RunConfig& c) {
  std::vector<std::string> tasks;
  for (Task t : c.tasks) tasks.emplace_back(TaskName(t));
  std::map<std::string, std::string> kv = {
      {"scenes", PathList(c.scenes)},
      {"out", c.out.string()},
      {"tasks", fmt::format("{}", fmt::join(tasks, ","))},
      {"seed", std::to_string(c.seed)},
      {"size", std::to_string(c.size)},
      {"concurrency", std::to_string(c.concurrency)},
      {"dataset", c.dataset.string()},
      {"bench", c.bench.string()},
      {"predictions", c.predictions.string()},
      {"input", c.input.string()},
      {"report", c.report.string()},
      {"endpoint", c.endpoint},
      {"model", c.model},
      {"judge_model", c.judge_model},
      {"mock", c.mock},
      {"timeout", fmt::format("{}", c.timeout)},
      {"complete_pending", c.complete_pending ? "true" : "false"},
      {"background_class",
       c.background_class ? std::to_string(*c.background_class) : std::string("none")},
      {"function_table", c.function_table.string()},
      {"hazard_table", c.hazard_table.string()},
      {"free_space_min_area", std::to_string(c.free_space_min_area)},
      {"relation_min_distance", fmt::format("{}", c.relation_min_distance)},
      {"landing_min_area", std::to_string(c.landing_min_area)},
      {"height_tolerance", fmt::format("{}", c.height_tolerance)},
      {"choice_options", std::to_string(c.choice_options)},
      {"max_records_per_frame", std::to_string(c.max_records_per_frame)},
      {"point_reward_radius", fmt::format("{}", c.point_reward_radius)},
      {"beta", fmt::format("{}", c.beta)},
      {"count", std::to_string(c.count)},
      {"width", std::to_string(c.width)},
      {"height", std::to_string(c.height)},
      {"tilt", fmt::format("{}", c.tilt)},
  };
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string ConfigHash(const RunConfig& config) {
  return fmt::format("{:016x}", Fnv1a64(CanonicalConfig(config)));
}

namespace {

nlohmann::json ReadJsonFile(const fs::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read {} {}", what, path.string()));
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ConfigError(fmt::format("{} {} is not a JSON object", what, path.string()));
  }
  return doc;
}

}  // namespace

GenerationConfig MakeGenerationConfig(const RunConfig& c) {
  GenerationConfig g;
  g.background_class = c.background_class;
  g.free_space_min_area = c.free_space_min_area;
  g.relation_min_distance = c.relation_min_distance;
  g.landing_min_area = c.landing_min_area;
  g.height_tolerance = c.height_tolerance;
  g.choice_options = c.choice_options;
  g.max_records_per_frame = c.max_records_per_frame;
  if (!c.function_table.empty()) {
    FunctionTable table;
    const nlohmann::json doc = ReadJsonFile(c.function_table, "function table");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& name = it.key();
      const nlohmann::json& value = it.value();
      if (!value.is_array()) {
        throw ConfigError(fmt::format("function table entry '{}' must be a list", name));
      }
      table[name] = value.get<std::vector<std::string>>();
    }
    g.function_table = std::move(table);
  }
  if (!c.hazard_table.empty()) {
    const nlohmann::json doc = ReadJsonFile(c.hazard_table, "hazard table");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& name = it.key();
      const nlohmann::json& value = it.value();
      if (!value.is_string()) {
        throw ConfigError(fmt::format("hazard table entry '{}' must be a string", name));
      }
      g.hazard_table[name] = value.get<std::string>();
    }
  }
  return g;
}

}  // namespace skyforge::cli
