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

#include <algorithm>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fmt/format.h"
#include "nlohmann/json.hpp"
#include "skyforge/error.hpp"

namespace skyforge::cli {
namespace {

std::string FlagName(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

struct Subcommand {
  const char* name;
  const char* help;
  int (*run)(const RunConfig&, std::ostream&);
};

constexpr Subcommand kSubcommands[] = {
    {"generate", "Generate a QA dataset from scene directories", CmdGenerate},
    {"curate", "Split a dataset into a benchmark and a frame-disjoint train set", CmdCurate},
    {"evaluate", "Query a model on a benchmark and write a report", CmdEvaluate},
    {"score", "Score saved predictions against a benchmark", CmdScore},
    {"reward", "Compute rewards for {task, pred, gt} lines", CmdReward},
    {"synth", "Write procedurally generated scene directories", CmdSynth},
};

bool IsEndpointError(ErrorCode code) {
  return code == ErrorCode::kAuthError || code == ErrorCode::kRateLimited ||
         code == ErrorCode::kTimeout || code == ErrorCode::kMalformedResponse ||
         code == ErrorCode::kJudgeUnavailable;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"skyforge: UAV spatial-reasoning QA generation and evaluation"};
  app.require_subcommand(1);
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::vector<std::pair<CLI::App*, const Subcommand*>> subs;
  for (const Subcommand& s : kSubcommands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", config_file, "key = value configuration file");
    for (const std::string& key : ConfigKeys()) {
      options[std::string(s.name) + "/" + key] =
          sub->add_option(FlagName(key), values[key], "Overrides '" + key + "'");
    }
    subs.emplace_back(sub, &s);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (const auto& [sub, spec] : subs) {
    if (!sub->parsed()) continue;
    try {
      RunConfig config;
      if (!config_file.empty()) LoadConfigFile(config, config_file);
      for (const std::string& key : ConfigKeys()) {
        if (options.at(std::string(spec->name) + "/" + key)->count() > 0) {
          ApplySetting(config, key, values[key]);
        }
      }
      ValidateConfig(config);
      return spec->run(config, out);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const Error& e) {
      err << fmt::format("error [{}]: {}\n", ErrorCodeName(e.code()), e.what());
      return IsEndpointError(e.code()) ? kExitEndpoint : kExitData;
    } catch (const nlohmann::json::exception& e) {
      err << "data error: " << e.what() << "\n";
      return kExitData;
    } catch (const std::filesystem::filesystem_error& e) {
      err << "filesystem error: " << e.what() << "\n";
      return kExitData;
    }
  }
  return kExitConfig;
}

}  // namespace skyforge::cli
