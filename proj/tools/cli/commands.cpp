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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <set>

#include "fmt/chrono.h"
#include "fmt/format.h"
#include "nlohmann/json.hpp"
#include "skyforge/answer.hpp"
#include "skyforge/curate.hpp"
#include "skyforge/error.hpp"
#include "skyforge/evaluation.hpp"
#include "skyforge/metrics.hpp"
#include "skyforge/model_client.hpp"
#include "skyforge/qa_generation.hpp"
#include "skyforge/rewards.hpp"
#include "skyforge/rng.hpp"
#include "skyforge/scene_io.hpp"
#include "skyforge/synth.hpp"

namespace skyforge::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void Require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kMissingFile, fmt::format("cannot write {}", path.string()));
  out << text;
}

std::string Timestamp() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                     fmt::gmtime(std::chrono::system_clock::to_time_t(
                         std::chrono::system_clock::now())));
}

fs::path ManifestPath(const fs::path& dataset) {
  return dataset.parent_path() / (dataset.stem().string() + ".manifest.json");
}

std::map<std::string, fs::path> SceneIndex(const std::vector<fs::path>& roots) {
  std::map<std::string, fs::path> index;
  for (const fs::path& root : roots) {
    for (const fs::path& dir : FindSceneDirs(root)) {
      index.emplace(dir.filename().string(), dir);
    }
  }
  return index;
}

bool IsSkip(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNothingToAsk:
    case ErrorCode::kMissingModality:
    case ErrorCode::kMissingFunctionTable:
    case ErrorCode::kNoBackgroundClass:
    case ErrorCode::kNoLidarCoverage:
    case ErrorCode::kInsufficientArea:
      return true;
    default:
      return false;
  }
}

struct Skip {
  std::string frame;
  std::string task;
  std::string code;
  std::string reason;
};

json SkipsToJson(const std::vector<Skip>& skips) {
  json out = json::array();
  for (const Skip& s : skips) {
    out.push_back({{"frame", s.frame}, {"task", s.task}, {"code", s.code}, {"reason", s.reason}});
  }
  return out;
}

EndpointConfig MakeEndpoint(const RunConfig& c) {
  Require(!c.endpoint.empty(), "an endpoint (--endpoint) or --mock is required");
  Require(!c.model.empty(), "--model is required with --endpoint");
  EndpointConfig e;
  e.base_url = c.endpoint;
  e.model = c.model;
  e.api_key = ApiKeyFromEnv();
  e.timeout_seconds = c.timeout;
  e.max_in_flight = c.concurrency;
  return e;
}

std::function<std::vector<std::string>(const std::string&)> ImageLoader(
    const std::vector<fs::path>& roots) {
  if (roots.empty()) return {};
  auto index = std::make_shared<std::map<std::string, fs::path>>(SceneIndex(roots));
  return [index](const std::string& frame) -> std::vector<std::string> {
    auto it = index->find(frame);
    if (it == index->end()) return {};
    return {ImageDataUrl(it->second / kRgbFile)};
  };
}

}  // namespace

int CmdGenerate(const RunConfig& c, std::ostream& log) {
  Require(!c.scenes.empty(), "generate needs --scenes");
  Require(!c.out.empty(), "generate needs --out");
  const GenerationConfig gen = MakeGenerationConfig(c);

  std::vector<fs::path> dirs;
  for (const auto& [frame, dir] : SceneIndex(c.scenes)) dirs.push_back(dir);
  std::vector<std::optional<SceneFrame>> loaded(dirs.size());
  std::vector<std::string> load_errors(dirs.size());
  ParallelFor(dirs.size(), c.concurrency, [&](std::size_t i) {
    try {
      loaded[i] = LoadScene(dirs[i]);
    } catch (const Error& e) {
      load_errors[i] = fmt::format("{}: {}", ErrorCodeName(e.code()), e.what());
    }
  });
  std::vector<Skip> skips;
  std::vector<const SceneFrame*> frames;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (loaded[i]) {
      frames.push_back(&*loaded[i]);
    } else {
      skips.push_back({dirs[i].filename().string(), "*", "LoadFailure", load_errors[i]});
    }
  }
  if (frames.empty()) {
    log << "error: no scene could be loaded\n";
    return kExitData;
  }

  std::map<ClassId, std::size_t> frames_per_class;
  for (const SceneFrame* f : frames) {
    std::set<ClassId> present(f->mask.class_ids.begin(), f->mask.class_ids.end());
    for (ClassId id : present) {
      if (!c.background_class || id != *c.background_class) ++frames_per_class[id];
    }
  }
  const auto weights = CountingWeights(frames_per_class, gen.counting_weight_cap);

  std::vector<Task> per_frame_tasks;
  bool want_multi = false;
  for (Task t : c.tasks) {
    if (t == Task::kCaptionMulti) {
      want_multi = true;
    } else {
      per_frame_tasks.push_back(t);
    }
  }
  std::vector<std::vector<QaRecord>> per_frame(frames.size());
  std::vector<std::vector<Skip>> per_frame_skips(frames.size());
  ParallelFor(frames.size(), c.concurrency, [&](std::size_t i) {
    for (Task task : per_frame_tasks) {
      try {
        for (QaRecord& r : GenerateForFrame(*frames[i], task, gen, c.seed, &weights)) {
          per_frame[i].push_back(std::move(r));
        }
      } catch (const Error& e) {
        if (!IsSkip(e.code())) throw;
        per_frame_skips[i].push_back({frames[i]->frame_id, std::string(TaskName(task)),
                                      std::string(ErrorCodeName(e.code())), e.what()});
      }
    }
  });
  std::vector<QaRecord> records;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (QaRecord& r : per_frame[i]) records.push_back(std::move(r));
    for (Skip& s : per_frame_skips[i]) skips.push_back(std::move(s));
  }
  if (want_multi) {
    const auto window = static_cast<std::size_t>(gen.caption_sequence_length);
    for (std::size_t start = 0; start + 1 < frames.size(); start += window) {
      const std::size_t len = std::min(window, frames.size() - start);
      const std::span<const SceneFrame* const> group(frames.data() + start, len);
      Rng rng(DeriveSeed(c.seed, frames[start]->frame_id, TaskName(Task::kCaptionMulti)));
      for (QaRecord& r : GenerateSemanticContext(group, Task::kCaptionMulti, gen, rng)) {
        records.push_back(std::move(r));
      }
    }
    if (frames.size() < 2) {
      skips.push_back({"*", "caption_multi", "NothingToAsk", "fewer than two frames"});
    }
  }

  std::size_t completed = 0;
  if (c.complete_pending) {
    EvaluationOptions opts;
    opts.concurrency = c.concurrency;
    if (!c.mock.empty()) {
      MockContextModel model(records);
      completed = CompletePending(records, model, opts);
    } else {
      HttpChatModel model(MakeEndpoint(c), MakeHttpTransport(MakeEndpoint(c)));
      opts.model = c.model;
      opts.images = ImageLoader(c.scenes);
      completed = CompletePending(records, model, opts);
    }
  }

  if (records.empty()) {
    log << "error: no records were generated\n";
    WriteText(ManifestPath(c.out), json{{"skipped", SkipsToJson(skips)}}.dump(2) + "\n");
    return kExitData;
  }
  WriteRecords(c.out, records);

  std::map<std::string, std::size_t> counts;
  std::size_t pending = 0;
  for (const QaRecord& r : records) {
    ++counts[std::string(TaskName(r.task))];
    if (r.pending) ++pending;
  }
  const json manifest = {{"config_hash", ConfigHash(c)},
                         {"config", CanonicalConfig(c)},
                         {"seed", c.seed},
                         {"frames", frames.size()},
                         {"records", records.size()},
                         {"pending", pending},
                         {"completed_pending", completed},
                         {"task_counts", counts},
                         {"skipped", SkipsToJson(skips)},
                         {"created_at", Timestamp()}};
  WriteText(ManifestPath(c.out), manifest.dump(2) + "\n");
  log << fmt::format("wrote {} records from {} frames to {} ({} pending, {} skips)\n",
                     records.size(), frames.size(), c.out.string(), pending, skips.size());
  return kExitOk;
}

int CmdCurate(const RunConfig& c, std::ostream& log) {
  Require(!c.dataset.empty(), "curate needs --dataset");
  Require(!c.out.empty(), "curate needs --out (directory)");
  const std::vector<QaRecord> records = ReadRecords(c.dataset);
  CurateConfig cc;
  cc.target = c.size;
  cc.seed = c.seed;
  const CurateResult result = CurateBenchmark(records, cc);

  const std::set<std::string> bench_frames = FrameIdsOf(result.bench);
  std::size_t shared = 0;
  for (const std::string& f : FrameIdsOf(result.train)) shared += bench_frames.count(f);
  if (shared > 0) {
    log << fmt::format("error: {} frames appear in both bench and train\n", shared);
    return kExitData;
  }
  fs::create_directories(c.out);
  WriteRecords(c.out / "bench.jsonl", result.bench);
  WriteRecords(c.out / "train.jsonl", result.train);
  std::map<std::string, std::size_t> counts;
  for (const QaRecord& r : result.bench) ++counts[std::string(TaskName(r.task))];
  const json manifest = {{"config_hash", ConfigHash(c)},
                         {"seed", c.seed},
                         {"target", c.size},
                         {"bench", result.bench.size()},
                         {"train", result.train.size()},
                         {"dropped", result.dropped},
                         {"bench_frames", bench_frames.size()},
                         {"shared_frames", shared},
                         {"task_counts", counts},
                         {"warnings", result.warnings},
                         {"created_at", Timestamp()}};
  WriteText(c.out / "curate.manifest.json", manifest.dump(2) + "\n");
  for (const std::string& w : result.warnings) log << "warning: " << w << "\n";
  log << fmt::format("bench {} records, train {}, dropped {}\n", result.bench.size(),
                     result.train.size(), result.dropped);
  return kExitOk;
}

namespace {

std::vector<QaRecord> LoadBench(const RunConfig& c, std::ostream& log) {
  Require(!c.bench.empty(), "--bench is required");
  std::vector<QaRecord> bench;
  std::size_t pending = 0;
  for (QaRecord& r : ReadRecords(c.bench)) {
    if (r.pending) {
      ++pending;
    } else {
      bench.push_back(std::move(r));
    }
  }
  if (pending > 0) log << fmt::format("skipping {} pending records\n", pending);
  return bench;
}

void WriteReport(const RunConfig& c, const EvalReport& report, std::ostream& log) {
  const std::string table = ReportTable(report);
  log << table;
  if (!c.report.empty()) {
    json doc = ReportToJson(report);
    doc["table"] = table;
    WriteText(c.report, doc.dump(2) + "\n");
    log << "report written to " << c.report.string() << "\n";
  }
}

}  // namespace

int CmdEvaluate(const RunConfig& c, std::ostream& log) {
  const std::vector<QaRecord> bench = LoadBench(c, log);
  if (bench.empty()) {
    log << "error: bench has no scorable records\n";
    return kExitData;
  }
  EvaluationOptions opts;
  opts.concurrency = c.concurrency;
  opts.model = c.model;
  std::unique_ptr<ChatModel> model;
  std::unique_ptr<Judge> judge;
  if (c.mock == "oracle") {
    model = std::make_unique<MockOracleModel>(bench);
  } else if (c.mock == "random") {
    model = std::make_unique<MockRandomModel>(bench, c.seed, c.width, c.height);
  } else {
    const EndpointConfig endpoint = MakeEndpoint(c);
    model = std::make_unique<HttpChatModel>(endpoint, MakeHttpTransport(endpoint));
    opts.images = ImageLoader(c.scenes);
  }
  if (c.mock.empty()) {
    judge = std::make_unique<ModelJudge>(*model, c.judge_model.empty() ? c.model : c.judge_model);
  } else {
    judge = std::make_unique<MockJudge>();
  }
  const std::vector<Prediction> predictions = CollectPredictions(bench, *model, opts);
  if (!c.predictions.empty()) WritePredictions(c.predictions, predictions);
  std::size_t failed = 0;
  for (const Prediction& p : predictions) failed += p.error.empty() ? 0 : 1;

  const std::vector<Verdict> verdicts =
      ScorePredictions(bench, predictions, judge.get(), c.concurrency);
  WriteReport(c, Aggregate(verdicts), log);
  if (failed > 0) {
    log << fmt::format("{} of {} model calls failed; their records are unscored\n", failed,
                       predictions.size());
  }
  return failed == predictions.size() ? kExitEndpoint : kExitOk;
}

int CmdScore(const RunConfig& c, std::ostream& log) {
  Require(!c.predictions.empty(), "score needs --predictions");
  const std::vector<QaRecord> bench = LoadBench(c, log);
  if (bench.empty()) {
    log << "error: bench has no scorable records\n";
    return kExitData;
  }
  const std::vector<Prediction> predictions = ReadPredictions(c.predictions);
  std::unique_ptr<ChatModel> judge_model;
  std::unique_ptr<Judge> judge;
  if (c.endpoint.empty()) {
    judge = std::make_unique<MockJudge>();
  } else {
    const EndpointConfig endpoint = MakeEndpoint(c);
    judge_model = std::make_unique<HttpChatModel>(endpoint, MakeHttpTransport(endpoint));
    judge = std::make_unique<ModelJudge>(*judge_model,
                                         c.judge_model.empty() ? c.model : c.judge_model);
  }
  const std::vector<Verdict> verdicts =
      ScorePredictions(bench, predictions, judge.get(), c.concurrency);
  WriteReport(c, Aggregate(verdicts), log);

  std::set<std::string_view> answered;
  for (const Prediction& p : predictions) answered.insert(p.record_id);
  std::set<Task> missing;
  std::set<Task> covered;
  for (const QaRecord& r : bench) {
    (answered.contains(r.id) ? covered : missing).insert(r.task);
  }
  std::vector<std::string> absent;
  for (Task t : missing) {
    if (!covered.contains(t)) absent.emplace_back(TaskName(t));
  }
  if (!absent.empty()) {
    log << fmt::format("error: no predictions for tasks: {}\n", fmt::join(absent, ", "));
    return kExitData;
  }
  return kExitOk;
}

namespace {

std::vector<Point2> PointsFrom(const json& v) {
  if (v.is_string()) {
    return std::get<std::vector<Point2>>(ParseAnswer(v.get<std::string>(), AnswerFormat::kPoints));
  }
  std::vector<Point2> out;
  for (const json& p : v) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return out;
}

std::vector<Box> BoxesFrom(const json& v) {
  if (v.is_string()) {
    return std::get<std::vector<Box>>(ParseAnswer(v.get<std::string>(), AnswerFormat::kBoxes));
  }
  // A single [x1,y1,x2,y2] or a list of them.
  const bool single = v.is_array() && v.size() == 4 && v.at(0).is_number();
  std::vector<Box> out;
  for (const json& b : single ? json::array({v}) : v) {
    out.push_back(Box{b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                      b.at(3).get<int>()}
                      .Normalized());
  }
  return out;
}

char LetterFrom(const json& v) {
  const std::string s = v.get<std::string>();
  if (s.size() == 1) return s[0];
  return std::get<Choice>(ParseAnswer(s, AnswerFormat::kChoice)).letter;
}

json RewardFor(const json& line, const RunConfig& c) {
  const std::string task = line.at("task").get<std::string>();
  json out = {{"task", task}};
  try {
    if (task == "point" || task == "freespace") {
      out["reward"] = PointReward(PointsFrom(line.at("pred")), PointsFrom(line.at("gt")),
                                  c.point_reward_radius);
    } else if (task == "box") {
      const std::vector<Box> pred = BoxesFrom(line.at("pred"));
      const std::vector<Box> gt = BoxesFrom(line.at("gt"));
      if (pred.size() == 1 && gt.size() == 1) {
        out["reward"] = BoxReward(pred[0], gt[0]);
      } else {
        out["reward"] = ScoreBoxes(pred, gt).miou;
      }
    } else if (task == "choice" || task == "color" || task == "relation" ||
               task == "counting") {
      out["reward"] = ChoiceReward(LetterFrom(line.at("pred")), LetterFrom(line.at("gt")));
    } else if (task == "sft") {
      const auto logprobs = line.at("logprobs").get<std::vector<double>>();
      out["loss"] = SftLoss(logprobs, line.at("answer_start").get<std::size_t>());
    } else if (task == "grpo") {
      std::vector<GrpoSample> batch;
      for (const json& s : line.at("samples")) {
        batch.push_back({s.at("reward").get<double>(), s.at("logp_policy").get<double>(),
                         s.at("logp_ref").get<double>()});
      }
      const double beta = line.value("beta", c.beta);
      out["loss"] = GrpoLoss(batch, beta);
      out["gradient"] = GrpoLossGradient(batch, beta);
      std::vector<double> rewards;
      for (const GrpoSample& s : batch) rewards.push_back(s.reward);
      if (rewards.size() >= 2) out["advantages"] = GroupAdvantage(rewards);
    } else {
      throw ConfigError(fmt::format("reward: unsupported task '{}'", task));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseFailure) throw;
    out["reward"] = 0.0;
    out["parse_failure"] = true;
  }
  return out;
}

}  // namespace

int CmdReward(const RunConfig& c, std::ostream& log) {
  Require(!c.input.empty(), "reward needs --input");
  std::ifstream in(c.input);
  if (!in) Fail(ErrorCode::kMissingFile, fmt::format("cannot read {}", c.input.string()));
  std::string lines_out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("task")) {
      Fail(ErrorCode::kMalformedFile,
           fmt::format("{}:{}: expected {{task, pred, gt}}", c.input.string(), lineno));
    }
    json out;
    try {
      out = RewardFor(doc, c);
    } catch (const json::exception& e) {
      Fail(ErrorCode::kMalformedFile,
           fmt::format("{}:{}: {}", c.input.string(), lineno, e.what()));
    }
    out["line"] = lineno;
    lines_out += out.dump() + "\n";
  }
  if (c.out.empty()) {
    log << lines_out;
  } else {
    WriteText(c.out, lines_out);
  }
  return kExitOk;
}

int CmdSynth(const RunConfig& c, std::ostream& log) {
  Require(!c.out.empty(), "synth needs --out (directory)");
  fs::create_directories(c.out);
  for (int i = 0; i < c.count; ++i) {
    SynthSpec spec = RandomSynthSpec(c.seed, c.width, c.height, fmt::format("synth_{:04d}", i));
    spec.tilt_degrees = c.tilt;
    const auto [frame, sheet] = SynthScene(spec);
    const fs::path dir = c.out / frame.frame_id;
    WriteScene(dir, frame);
    WriteText(dir / "sheet.json", SheetToJson(sheet).dump(2) + "\n");
  }
  log << fmt::format("wrote {} synthetic scenes to {}\n", c.count, c.out.string());
  return kExitOk;
}

}  // namespace skyforge::cli
