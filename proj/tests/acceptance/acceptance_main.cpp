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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include "skyforge/geometry.hpp"
#include "skyforge/metrics.hpp"
#include "skyforge/projection.hpp"
#include "skyforge/qa_record.hpp"
#include "skyforge/rewards.hpp"
#include "skyforge/rng.hpp"
#include "skyforge/synth.hpp"
#include "temp_dir.hpp"

namespace skyforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Collects the first few violations of one criterion.
class Findings {
 public:
  void Check(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::string out = std::to_string(failures_) + " violation(s)";
    for (const std::string& n : notes_) out += "; " + n;
    return out;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> notes_;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// 1. Components, boxes, centroids and free regions against flood fill.
std::string GeometryOracle(Findings& f) {
  const auto start = Clock::now();
  std::mt19937_64 gen(1001);
  for (int trial = 0; trial < 200; ++trial) {
    const SemanticMask mask = testing::RandomMask(gen, 32, 32, 2 + trial % 5);
    const std::string tag = "mask " + std::to_string(trial);
    for (bool eight : {false, true}) {
      const auto got = ExtractInstances(mask, eight ? Connectivity::kEight : Connectivity::kFour,
                                        ClassId{0});
      const auto want = testing::FloodFillComponents(mask, eight, ClassId{0});
      f.Check(got.size() == want.size(), tag + ": component count");
      for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
        f.Check(got[i].class_id == want[i].class_id, tag + ": class");
        f.Check(got[i].pixels == PixelSet(want[i].pixels), tag + ": pixels");
        f.Check(got[i].bbox == want[i].bbox, tag + ": bbox");
        f.Check(got[i].centroid.x == want[i].cx && got[i].centroid.y == want[i].cy,
                tag + ": centroid");
      }
    }
    Rng rng(trial);
    const int min_area = 20;
    const auto regions = ExtractFreeSpace(mask, ClassId{0}, rng, min_area);
    std::vector<testing::OracleComponent> want;
    for (auto& c : testing::FloodFillComponents(mask, false, std::nullopt)) {
      if (c.class_id == 0 && c.pixels.size() > static_cast<std::size_t>(min_area)) {
        want.push_back(std::move(c));
      }
    }
    f.Check(regions.size() == want.size(), tag + ": free region count");
    for (std::size_t i = 0; i < std::min(regions.size(), want.size()); ++i) {
      f.Check(regions[i].component.pixels == PixelSet(want[i].pixels), tag + ": free pixels");
      f.Check(regions[i].component.bbox == want[i].bbox, tag + ": free bbox");
    }
  }
  const double secs = Seconds(start);
  f.Check(secs < 10.0, "runtime " + Fmt(secs) + " s");
  return "200 random 32x32 masks in " + Fmt(secs) + " s";
}

// 2. Hand-labelled centroid pairs and antipodal symmetry.
std::string RelationSuite(Findings& f) {
  struct Case {
    double dx, dy;
    std::optional<RelationClass> want;
  };
  using R = RelationClass;
  // Image y grows downward, so positive dy is "down".
  const std::vector<Case> cases = {
      {100, 0, R::kRight},     {70, 70, R::kDownRight},   {0, 90, R::kDown},
      {-60, 60, R::kDownLeft}, {-120, 0, R::kLeft},       {-55, -55, R::kUpLeft},
      {0, -51, R::kUp},        {40, -40, R::kUpRight},    {60, 20, R::kRight},
      {40, 60, R::kDownRight}, {-15, 70, R::kDown},       {-70, 50, R::kDownLeft},
      {-80, -25, R::kLeft},    {-45, -60, R::kUpLeft},    {20, -75, R::kUp},
      {65, -40, R::kUpRight},  {30, 0, std::nullopt},     {20, 20, std::nullopt},
      {0, 35, std::nullopt},   {-25, 25, std::nullopt},   {-49, 0, std::nullopt},
      {-30, -30, std::nullopt}, {0, -50, std::nullopt},   {35, -35, std::nullopt},
  };
  std::set<R> sectors;
  for (const Case& c : cases) {
    const Point2 a{300, 200};
    const auto got = ClassifyRelation(a, {a.x + c.dx, a.y + c.dy}, 50.0);
    const std::string tag = "(" + Fmt(c.dx) + ", " + Fmt(c.dy) + ")";
    f.Check(got.has_value() == c.want.has_value(), tag + ": threshold");
    if (got && c.want) {
      f.Check(got->relation == *c.want, tag + ": got " + std::string(RelationName(got->relation)));
      sectors.insert(got->relation);
    }
  }
  f.Check(sectors.size() == 8, "not all sectors covered");

  std::mt19937_64 gen(2002);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  int pairs = 0;
  while (pairs < 1000) {
    const Point2 a{u(gen), u(gen)};
    const Point2 b{u(gen), u(gen)};
    const auto ab = ClassifyRelation(a, b);
    const auto ba = ClassifyRelation(b, a);
    f.Check(ab.has_value() == ba.has_value(), "symmetry of threshold");
    if (!ab || !ba) continue;
    // Exact sector boundaries flip under negation; random doubles avoid them.
    f.Check(ba->relation == Antipode(ab->relation), "antipode mismatch");
    ++pairs;
  }
  return "24 labelled pairs, 1000 antipodal pairs";
}

// 3. Nadir depth and pose heights.
std::string ProjectionSuite(Findings& f) {
  double worst_depth = 0.0;
  const std::vector<double> heights = {0.0, 2.5, 7.0, 15.0, 31.0};
  for (std::size_t k = 0; k < heights.size(); ++k) {
    SynthSpec spec;
    spec.frame_id = "nadir_" + std::to_string(k);
    spec.altitude = 60.0;
    spec.seed = 40 + k;
    spec.placements.push_back({3, SynthShape::kRectangle, 30 + int(k) * 5, 40, 24, 18,
                               Rgb{200, 30, 30}, heights[k]});
    const auto [frame, sheet] = SynthScene(spec);
    const auto inst = ExtractInstances(frame.mask, Connectivity::kFour, ClassId{0});
    f.Check(inst.size() == 1, "expected one instance");
    if (inst.size() != 1) continue;
    const double depth = ObjectMeanDepth(frame, inst[0]);
    const double err = std::abs(depth - (spec.altitude - heights[k]));
    worst_depth = std::max(worst_depth, err);
    f.Check(err <= 1e-6, "depth " + Fmt(depth) + " for height " + Fmt(heights[k]));
  }

  std::mt19937_64 gen(3003);
  std::uniform_real_distribution<double> u(-80.0, 80.0);
  SynthSpec spec = RandomSynthSpec(77, 96, 96, "poses");
  auto [frame, sheet] = SynthScene(spec);
  const auto instances = ExtractInstances(frame.mask, Connectivity::kFour, ClassId{0});
  const DepthIndex index(frame);
  double worst_height = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix4d pose = Eigen::Matrix4d::Identity();
    pose.topLeftCorner<3, 3>() = testing::RandomRotation(gen);
    pose.topRightCorner<3, 1>() = Eigen::Vector3d(u(gen), u(gen), u(gen));
    frame.pose = PoseTransform{pose};
    for (const ObjectInstance& inst : instances) {
      const auto points = index.PointsIn(inst.pixels);
      if (points.empty()) continue;
      double oracle = 0.0;
      for (const Eigen::Vector3d& p : points) {
        oracle += testing::MatMul4(pose, Eigen::Vector4d(p.x(), p.y(), p.z(), 1.0))(2);
      }
      oracle /= static_cast<double>(points.size());
      const double err = std::abs(ObjectMeanHeight(frame, inst) - oracle);
      worst_height = std::max(worst_height, err);
      f.Check(err <= 1e-9, "height error " + Fmt(err));
      ++checked;
    }
  }
  f.Check(checked >= 20, "too few covered objects");
  return "depth err " + Fmt(worst_depth) + " m, height err " + Fmt(worst_height) + " m over " +
         std::to_string(checked) + " object-poses";
}

// 4. IoU, point lookup, BLEU fixtures and the 0.5 hit rule.
std::string MetricSuite(Findings& f) {
  std::mt19937_64 gen(4004);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Box a = testing::RandomBox(gen, 40);
    const Box b = testing::RandomBox(gen, 40);
    const double err = std::abs(Iou(a, b) - testing::EnumeratedIou(a, b));
    worst = std::max(worst, err);
    f.Check(err <= 1e-12, "iou error " + Fmt(err));
  }

  const SemanticMask m = testing::RandomMask(gen, 32, 32, 3);
  std::vector<Pixel> px;
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x)
      if (m.At(x, y) == 1) px.push_back({x, y});
  const PixelSet target(px);
  std::uniform_real_distribution<double> c(0.0, 31.0);
  for (int i = 0; i < 300; ++i) {
    const std::vector<Point2> one = {{c(gen), c(gen)}};
    const bool inside = m.At(int(std::lround(one[0].x)), int(std::lround(one[0].y))) == 1;
    f.Check(ScorePoints(one, target) == (inside ? 1.0 : 0.0), "point lookup");
  }

  const double bp = std::exp(1.0 - 3.0 / 2.0);
  const std::vector<std::tuple<const char*, const char*, std::vector<double>>> bleu = {
      {"the cat sat on the mat", "the cat sat on the mat", {1, 1, 1, 1}},
      {"the cat", "the cat sat", {bp, bp, bp, bp}},
      {"", "the cat", {0, 0, 0, 0}},
      // Orders 3 and 4 have no match and use the (0 + 1) / (count + 1) floor.
      {"the the the the", "the cat",
       {0.25, 0.25, std::cbrt(1.0 / 48.0), std::pow(1.0 / 96.0, 0.25)}},
      {"a b c d", "a b c e", {0.75, std::sqrt(0.5), std::cbrt(0.25), std::pow(0.125, 0.25)}},
  };
  for (const auto& [cand, ref, want] : bleu) {
    const auto got = Bleu(cand, ref);
    f.Check(got.size() == 4, "bleu arity");
    for (std::size_t n = 0; n < std::min<std::size_t>(4, got.size()); ++n) {
      f.Check(std::abs(got[n] - want[n]) <= 1e-9,
              std::string("bleu '") + cand + "' n=" + std::to_string(n + 1));
    }
  }

  // Ground truth 10x10 at the origin; the predictions overlap by exactly
  // half (IoU 100/200 = 0.5) and by 100/210 (just below).
  const std::vector<Box> gt = {{0, 0, 9, 9}};
  const std::vector<Box> half = {{0, 0, 9, 19}};
  const std::vector<Box> below = {{0, 0, 9, 9 + 11}};
  f.Check(Iou(half[0], gt[0]) == 0.5, "boundary iou");
  f.Check(ScoreBoxes(half, gt).hit_rate == 1.0, "IoU 0.5 must count as a hit");
  f.Check(Iou(below[0], gt[0]) < 0.5 && ScoreBoxes(below, gt).hit_rate == 0.0,
          "IoU below 0.5 must miss");
  return "iou err " + Fmt(worst) + ", 300 lookups, 5 BLEU fixtures, 0.5 boundary";
}

// 5. Rewards and the policy-gradient loss.
std::string RewardSuite(Findings& f) {
  const std::vector<Point2> pred = {{100, 100}};
  const std::vector<Point2> at50 = {{120, 130}};
  const std::vector<Point2> at51 = {{126, 125}};
  f.Check(PointReward(pred, at50) == 1.0, "L1 = 50 must reward 1");
  f.Check(PointReward(pred, at51) == 0.0, "L1 = 51 must reward 0");
  f.Check(ChoiceReward('B', 'B') == 1.0 && ChoiceReward('B', 'C') == 0.0, "choice reward");
  std::mt19937_64 gen(5005);
  for (int i = 0; i < 200; ++i) {
    const Box a = testing::RandomBox(gen, 64);
    const Box b = testing::RandomBox(gen, 64);
    f.Check(BoxReward(a, b) == Iou(a, b), "box reward differs from iou");
  }
  const std::vector<double> ones = {-1.0, -1.0};
  const std::vector<double> mixed = {-0.5, -1.5, -2.0};
  f.Check(SftLoss(ones, 1) == 1.0, "sft fixture 1");
  f.Check(SftLoss(mixed, 2) == 1.75, "sft fixture 1.75");
  f.Check(kDefaultKlBeta == 0.01, "default beta");
  const std::vector<GrpoSample> one = {{1.0, -1.0, -1.2}};
  f.Check(std::abs(GrpoLoss(one) - (-0.198)) <= 1e-12, "grpo fixture");

  std::uniform_real_distribution<double> r(0.0, 1.0);
  std::uniform_real_distribution<double> lp(-20.0, -0.1);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<GrpoSample> batch(2 + trial % 7);
    for (auto& s : batch) s = {r(gen), lp(gen), lp(gen)};
    const auto grad = GrpoLossGradient(batch);
    const double h = 1e-4;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      auto plus = batch, minus = batch;
      plus[i].logp_policy += h;
      minus[i].logp_policy -= h;
      const double fd = (GrpoLoss(plus) - GrpoLoss(minus)) / (2 * h);
      const double rel = std::abs(fd - grad[i]) / std::max(std::abs(grad[i]), 1e-300);
      worst = std::max(worst, rel);
      f.Check(rel <= 1e-6, "gradient rel err " + Fmt(rel));
    }
  }
  return "worst gradient rel err " + Fmt(worst);
}

// Shared CLI runs for criteria 6-8.
struct Cli {
  int code = 0;
  std::string out;
  std::string err;
};

Cli RunCommand(std::vector<std::string> args) {
  args.insert(args.begin(), "skyforge");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, json> Columns(const fs::path& report) {
  std::map<std::string, json> out;
  const json doc = json::parse(Slurp(report));
  for (const json& col : doc.at("columns")) {
    out[col["task"].get<std::string>()] = col;
  }
  return out;
}

std::set<std::string> Frames(const fs::path& records) {
  std::set<std::string> out;
  std::ifstream in(records);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json record = json::parse(line);
    for (const json& f : record.at("frame_ids")) out.insert(f.get<std::string>());
  }
  return out;
}

class Workspace {
 public:
  Workspace() : dir_("acceptance") {}
  fs::path path() const { return dir_.path(); }
  fs::path scenes() const { return dir_ / "scenes"; }

  Cli Generate(const fs::path& out) const {
    const fs::path data = SKYFORGE_SOURCE_DIR "/data";
    return RunCommand({"generate", "--scenes", scenes().string(), "--out", out.string(), "--seed",
                       "17", "--function-table", (data / "function_table.json").string(),
                       "--hazard-table", (data / "hazard_table.json").string(),
                       "--complete-pending", "true", "--mock", "oracle"});
  }

 private:
  testing::TempDir dir_;
};

// 6. generate -> curate -> evaluate with the mock models.
std::string EndToEnd(Findings& f, const Workspace& ws) {
  const auto start = Clock::now();
  const Cli synth = RunCommand({"synth", "--out", ws.scenes().string(), "--count", "320",
                                "--seed", "9", "--width", "192", "--height", "192"});
  f.Check(synth.code == 0, "synth failed: " + synth.err);
  const fs::path data = ws.path() / "data.jsonl";
  const Cli gen = ws.Generate(data);
  f.Check(gen.code == 0, "generate failed: " + gen.err);
  const Cli cur = RunCommand({"curate", "--dataset", data.string(), "--out",
                              (ws.path() / "split").string(), "--size", "100", "--seed", "3"});
  f.Check(cur.code == 0, "curate failed: " + cur.err);
  const fs::path bench = ws.path() / "split/bench.jsonl";

  const Cli oracle = RunCommand({"evaluate", "--bench", bench.string(), "--mock", "oracle",
                                 "--report", (ws.path() / "oracle.json").string()});
  f.Check(oracle.code == 0, "oracle evaluate failed: " + oracle.err);
  const auto oracle_cols = Columns(ws.path() / "oracle.json");
  std::size_t bench_size = 0;
  for (const auto& [task, col] : oracle_cols) bench_size += col["count"].get<std::size_t>();
  f.Check(bench_size >= 90 && bench_size <= 110, "bench size " + std::to_string(bench_size));
  for (const char* task : {"box", "point", "color", "relation", "counting", "freespace"}) {
    auto it = oracle_cols.find(task);
    f.Check(it != oracle_cols.end(), std::string("bench lacks ") + task);
    if (it == oracle_cols.end()) continue;
    const double score = std::string(task) == "box" ? it->second["hit_rate"].get<double>()
                                                    : it->second["score"].get<double>();
    f.Check(score == 100.0, std::string("oracle ") + task + " = " + Fmt(score));
  }

  // The curated bench is too small for a 500-record random baseline per
  // task, so the random model runs on the whole generated dataset.
  const Cli random = RunCommand({"evaluate", "--bench", data.string(), "--mock", "random",
                                 "--seed", "5", "--report", (ws.path() / "random.json").string(),
                                 "--width", "192", "--height", "192"});
  f.Check(random.code == 0, "random evaluate failed: " + random.err);
  const auto random_cols = Columns(ws.path() / "random.json");
  std::string detail;
  for (const char* task : {"color", "relation", "counting"}) {
    auto it = random_cols.find(task);
    f.Check(it != random_cols.end(), std::string("dataset lacks ") + task);
    if (it == random_cols.end()) continue;
    const auto count = it->second["count"].get<std::size_t>();
    const double score = it->second["score"].get<double>();
    f.Check(count >= 500, std::string(task) + " has only " + std::to_string(count) + " records");
    f.Check(std::abs(score - 25.0) <= 5.0, std::string("random ") + task + " = " + Fmt(score));
    detail += std::string(", random ") + task + " " + Fmt(score) + " (n=" +
              std::to_string(count) + ")";
  }
  const double secs = Seconds(start);
  f.Check(secs < 60.0, "runtime " + Fmt(secs) + " s");
  return "bench " + std::to_string(bench_size) + detail + ", " + Fmt(secs) + " s";
}

// 7. Bench and train never share a frame, over several curate runs.
std::string Leakage(Findings& f, const Workspace& ws) {
  const fs::path data = ws.path() / "data.jsonl";
  int runs = 0;
  for (int seed = 0; seed < 4; ++seed) {
    for (const char* size : {"50", "100", "300"}) {
      const fs::path out = ws.path() / ("leak_" + std::to_string(seed) + "_" + size);
      const Cli cur = RunCommand({"curate", "--dataset", data.string(), "--out", out.string(),
                                  "--size", size, "--seed", std::to_string(seed)});
      f.Check(cur.code == 0, "curate failed: " + cur.err);
      if (cur.code != 0) continue;
      const auto bench = Frames(out / "bench.jsonl");
      const auto train = Frames(out / "train.jsonl");
      std::vector<std::string> shared;
      std::set_intersection(bench.begin(), bench.end(), train.begin(), train.end(),
                            std::back_inserter(shared));
      f.Check(shared.empty(), std::to_string(shared.size()) + " shared frames");
      f.Check(!train.empty(), "train split is empty");
      ++runs;
    }
  }
  return std::to_string(runs) + " curate runs, no shared frames";
}

// 8. Identical config and seed give identical dataset bytes.
std::string Determinism(Findings& f, const Workspace& ws) {
  const fs::path a = ws.path() / "repeat_a.jsonl";
  const fs::path b = ws.path() / "repeat_b.jsonl";
  f.Check(ws.Generate(a).code == 0 && ws.Generate(b).code == 0, "generate failed");
  const std::string first = Slurp(a);
  f.Check(!first.empty(), "empty dataset");
  f.Check(first == Slurp(b), "datasets differ");
  f.Check(first == Slurp(ws.path() / "data.jsonl"), "differs from the first run");
  return std::to_string(first.size()) + " bytes, identical";
}

}  // namespace
}  // namespace skyforge

int main() {
  using namespace skyforge;
  const Workspace ws;
  const std::vector<std::pair<std::string, std::function<std::string(Findings&)>>> criteria = {
      {"geometry oracle suite", GeometryOracle},
      {"relation suite", RelationSuite},
      {"projection and height suite", ProjectionSuite},
      {"metric suite", MetricSuite},
      {"reward suite", RewardSuite},
      {"end-to-end mock run", [&](Findings& f) { return EndToEnd(f, ws); }},
      {"leakage invariant", [&](Findings& f) { return Leakage(f, ws); }},
      {"generate determinism", [&](Findings& f) { return Determinism(f, ws); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Findings f;
    std::string detail;
    try {
      detail = criteria[i].second(f);
    } catch (const std::exception& e) {
      f.Check(false, std::string("exception: ") + e.what());
    }
    const bool ok = f.ok();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << (ok ? detail : f.Summary()) << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
