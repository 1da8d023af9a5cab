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

#ifndef SKYFORGE_TOOLS_CLI_COMMANDS_HPP_
#define SKYFORGE_TOOLS_CLI_COMMANDS_HPP_

#include <ostream>

#include "run_config.hpp"

namespace skyforge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitData = 3,
  kExitEndpoint = 4,
};

// Each command writes its outputs to disk, progress to `log`, and returns an
// exit code. Errors propagate as exceptions; RunCli maps them to exit codes.

// Scenes -> JSON-lines dataset at config.out plus <stem>.manifest.json.
int CmdGenerate(const RunConfig& config, std::ostream& log);
// config.dataset -> config.out/{bench,train}.jsonl and curate.manifest.json.
int CmdCurate(const RunConfig& config, std::ostream& log);
// config.bench -> report; mock or endpoint model, optional predictions dump.
int CmdEvaluate(const RunConfig& config, std::ostream& log);
// config.bench + config.predictions -> report.
int CmdScore(const RunConfig& config, std::ostream& log);
// config.input lines {task, pred, gt} -> reward lines at config.out (or log).
int CmdReward(const RunConfig& config, std::ostream& log);
// config.count random synthetic scenes under config.out.
int CmdSynth(const RunConfig& config, std::ostream& log);

// Full command line: "skyforge <subcommand> [--config FILE] [--key VALUE]...".
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skyforge::cli

#endif  // SKYFORGE_TOOLS_CLI_COMMANDS_HPP_
