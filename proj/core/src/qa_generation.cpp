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

#include "skyforge/qa_generation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fmt/format.h"
#include "skyforge/answer.hpp"
#include "skyforge/error.hpp"
#include "skyforge/templates.hpp"

namespace skyforge {
using nlohmann::json;

namespace {

struct FrameObjects {
  std::vector<ObjectInstance> instances;
  std::map<ClassId, std::vector<std::size_t>> by_class;
};

FrameObjects CollectObjects(const SceneFrame& frame, const GenerationConfig& cfg) {
  FrameObjects out;
  for (ObjectInstance& inst :
       ExtractInstances(frame.mask, cfg.connectivity, cfg.background_class)) {
    if (inst.area() < static_cast<std::size_t>(std::max(cfg.min_instance_area, 1))) {
      continue;
    }
    out.by_class[inst.class_id].push_back(out.instances.size());
    out.instances.push_back(std::move(inst));
  }
  return out;
}

[[noreturn]] void NothingToAsk(const SceneFrame& frame, Task task,
                               std::string_view why) {
  Fail(ErrorCode::kNothingToAsk,
       fmt::format("frame {} task {}: {}", frame.frame_id, TaskName(task), why));
}

std::string ObjectRef(const SceneFrame& frame, const FrameObjects& objs,
                      std::size_t idx) {
  const ObjectInstance& inst = objs.instances[idx];
  const std::string name = frame.mask.ClassName(inst.class_id);
  if (objs.by_class.at(inst.class_id).size() == 1) return "the " + name;
  return fmt::format("the {} centered near ({}, {})", name,
                     std::lround(inst.centroid.x), std::lround(inst.centroid.y));
}

json BoxJson(const Box& b) { return json::array({b.x1, b.y1, b.x2, b.y2}); }
json PixelJson(const Pixel& p) { return json::array({p.x, p.y}); }
json PointJson(const Point2& p) { return json::array({p.x, p.y}); }

struct Picked {
  int id;
  std::string_view text;
};

Picked PickTemplate(Task task, Rng& rng) {
  const auto templates = TemplateBank::Default().For(task);
  const auto id = static_cast<int>(rng.UniformIndex(templates.size()));
  return {id, templates[id]};
}

std::string BoxInstruction() {
  return "\nAnswer with <box>[[x1,y1,x2,y2],...]</box> using pixel coordinates.";
}

std::string PointInstruction() {
  return "\nAnswer with <point>[[x1,y1],[x2,y2],...]</point> using pixel "
         "coordinates.";
}

// Builds the option list: the correct text plus `k - 1` distractors drawn from
// `pool`, in a seed-determined order.
struct ChoiceSet {
  std::vector<std::string> options;
  int correct = 0;
};

ChoiceSet MakeChoices(const std::string& correct,
                      const std::vector<std::string>& pool, int k, Rng& rng) {
  std::vector<std::string> distinct;
  for (const std::string& s : pool) {
    if (s != correct &&
        std::find(distinct.begin(), distinct.end(), s) == distinct.end()) {
      distinct.push_back(s);
    }
  }
  const std::size_t want = static_cast<std::size_t>(k - 1);
  if (distinct.size() < want) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("need {} distractors, only {} available", want, distinct.size()));
  }
  ChoiceSet set;
  set.options.push_back(correct);
  for (std::size_t i : rng.SampleDistinct(distinct.size(), want)) {
    set.options.push_back(distinct[i]);
  }
  rng.Shuffle(set.options);
  set.correct = static_cast<int>(
      std::find(set.options.begin(), set.options.end(), correct) - set.options.begin());
  return set;
}

std::string ChoiceBlock(const std::vector<std::string>& options) {
  std::string out = "\nOptions:";
  for (std::size_t i = 0; i < options.size(); ++i) {
    out += fmt::format("\n{}. {}", OptionLetter(static_cast<int>(i)), options[i]);
  }
  out += "\nAnswer with <choice>LETTER</choice>.";
  return out;
}

void ValidateChoiceCount(const GenerationConfig& cfg) {
  if (cfg.choice_options < 4 || cfg.choice_options > 6) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("choice_options must be in [4, 6], got {}", cfg.choice_options));
  }
}

QaRecord NewRecord(const SceneFrame& frame, Task task, const Picked& tmpl,
                   std::uint64_t seed) {
  QaRecord r;
  r.frame_ids = {frame.frame_id};
  r.task = task;
  r.answer_format = FormatOf(task);
  r.template_id = tmpl.id;
  r.seed = seed;
  return r;
}

// Keeps at most cfg.max_records_per_frame candidates, then numbers them.
std::vector<QaRecord> Finalize(std::vector<QaRecord> records, const std::string& frame_key,
                               Task task, const GenerationConfig& cfg, Rng& rng) {
  const auto cap = static_cast<std::size_t>(std::max(cfg.max_records_per_frame, 1));
  if (records.size() > cap) {
    std::vector<std::size_t> keep = rng.SampleDistinct(records.size(), cap);
    std::sort(keep.begin(), keep.end());
    std::vector<QaRecord> kept;
    for (std::size_t i : keep) kept.push_back(std::move(records[i]));
    records = std::move(kept);
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].id = fmt::format("{}:{}:{}", frame_key, TaskName(task), i);
  }
  return records;
}

std::uint64_t RecordSeed(Rng& rng) { return rng.NextU64(); }

std::vector<QaRecord> GenBox(const SceneFrame& frame, const FrameObjects& objs,
                             const GenerationConfig&, Rng& rng) {
  std::vector<QaRecord> out;
  for (const auto& [cls, members] : objs.by_class) {
    const Picked tmpl = PickTemplate(Task::kBox, rng);
    QaRecord r = NewRecord(frame, Task::kBox, tmpl, RecordSeed(rng));
    const std::string name = frame.mask.ClassName(cls);
    r.question = RenderTemplate(tmpl.text, {{"class", name}}) + BoxInstruction();
    std::vector<Box> boxes;
    json jboxes = json::array();
    for (std::size_t idx : members) {
      boxes.push_back(objs.instances[idx].bbox);
      jboxes.push_back(BoxJson(objs.instances[idx].bbox));
    }
    r.ground_truth = {{"class_id", cls}, {"class_name", name}, {"boxes", jboxes}};
    r.answer = SerializeAnswer(boxes, AnswerFormat::kBoxes);
    r.class_ids = {cls};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QaRecord> GenPoint(const SceneFrame& frame, const FrameObjects& objs,
                               const GenerationConfig&, Rng& rng) {
  std::vector<QaRecord> out;
  for (const auto& [cls, members] : objs.by_class) {
    std::size_t largest = members.front();
    PixelSet target;
    for (std::size_t idx : members) {
      if (objs.instances[idx].area() > objs.instances[largest].area()) largest = idx;
      target = target.Union(objs.instances[idx].pixels);
    }
    const ObjectInstance& inst = objs.instances[largest];
    if (inst.area() < 5) continue;
    const int count = rng.UniformInt(5, static_cast<int>(std::min<std::size_t>(8, inst.area())));
    const std::vector<Pixel> pts = SamplePointsInMask(inst, count, rng);
    const Picked tmpl = PickTemplate(Task::kPoint, rng);
    QaRecord r = NewRecord(frame, Task::kPoint, tmpl, RecordSeed(rng));
    const std::string name = frame.mask.ClassName(cls);
    r.question = RenderTemplate(tmpl.text, {{"class", name}}) + PointInstruction();
    std::vector<Point2> points;
    json jpoints = json::array();
    for (const Pixel& p : pts) {
      points.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
      jpoints.push_back(PixelJson(p));
    }
    r.ground_truth = {{"class_id", cls},
                      {"class_name", name},
                      {"points", jpoints},
                      {"mask_runs", RunsToJson(target)}};
    r.answer = SerializeAnswer(points, AnswerFormat::kPoints);
    r.class_ids = {cls};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QaRecord> GenReversePoint(const SceneFrame& frame,
                                      const FrameObjects& objs,
                                      const GenerationConfig&, Rng& rng) {
  std::vector<QaRecord> out;
  for (const ObjectInstance& inst : objs.instances) {
    if (inst.area() < 5) continue;
    const int count = rng.UniformInt(5, static_cast<int>(std::min<std::size_t>(8, inst.area())));
    const std::vector<Pixel> pts = SamplePointsInMask(inst, count, rng);
    const Picked tmpl = PickTemplate(Task::kReversePoint, rng);
    QaRecord r = NewRecord(frame, Task::kReversePoint, tmpl, RecordSeed(rng));
    const Pixel query = pts.front();
    r.question = RenderTemplate(tmpl.text, {{"x", std::to_string(query.x)},
                                            {"y", std::to_string(query.y)}}) +
                 "\nAnswer with the object category name.";
    const std::string name = frame.mask.ClassName(inst.class_id);
    json jpoints = json::array();
    for (const Pixel& p : pts) jpoints.push_back(PixelJson(p));
    r.ground_truth = {{"class_id", inst.class_id},
                      {"class_name", name},
                      {"point", PixelJson(query)},
                      {"points", jpoints},
                      {"text", name}};
    r.answer = name;
    r.class_ids = {inst.class_id};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QaRecord> GenFreespace(const SceneFrame& frame, const GenerationConfig& cfg,
                                   Rng& rng) {
  const std::vector<FreeRegion> regions = ExtractFreeSpace(
      frame.mask, cfg.background_class, rng, cfg.free_space_min_area, cfg.connectivity);
  if (regions.empty()) return {};
  PixelSet target;
  std::vector<Point2> points;
  json jpoints = json::array();
  json areas = json::array();
  for (const FreeRegion& region : regions) {
    target = target.Union(region.component.pixels);
    areas.push_back(region.area());
    for (const Pixel& p : region.sample_points) {
      points.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
      jpoints.push_back(PixelJson(p));
    }
  }
  const Picked tmpl = PickTemplate(Task::kFreespace, rng);
  QaRecord r = NewRecord(frame, Task::kFreespace, tmpl, RecordSeed(rng));
  r.question = std::string(tmpl.text) + PointInstruction();
  r.ground_truth = {{"points", jpoints},
                    {"mask_runs", RunsToJson(target)},
                    {"region_areas", areas}};
  r.answer = SerializeAnswer(points, AnswerFormat::kPoints);
  if (cfg.background_class) r.class_ids = {*cfg.background_class};
  return {std::move(r)};
}

std::vector<QaRecord> GenRelation(const SceneFrame& frame, const FrameObjects& objs,
                                  const GenerationConfig& cfg, Rng& rng) {
  ValidateChoiceCount(cfg);
  struct Pair {
    std::size_t a, b;
    RelationJudgment judgment;
  };
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < objs.instances.size(); ++a) {
    for (std::size_t b = 0; b < objs.instances.size(); ++b) {
      if (a == b) continue;
      const Point2 ca = objs.instances[a].centroid;
      const Point2 cb = objs.instances[b].centroid;
      if (ca == cb) continue;
      if (auto j = ClassifyRelation(ca, cb, cfg.relation_min_distance)) {
        pairs.push_back({a, b, *j});
      }
    }
  }
  if (pairs.empty()) return {};
  // Subsample pairs before rendering so large frames stay cheap.
  const std::size_t cap = static_cast<std::size_t>(std::max(cfg.max_records_per_frame, 1));
  std::vector<std::size_t> chosen = rng.SampleDistinct(pairs.size(), std::min(cap, pairs.size()));
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::string> pool;
  for (RelationClass rc : kAllRelations) pool.emplace_back(RelationPhrase(rc));

  std::vector<QaRecord> out;
  for (std::size_t pi : chosen) {
    const Pair& p = pairs[pi];
    const Picked tmpl = PickTemplate(Task::kRelation, rng);
    QaRecord r = NewRecord(frame, Task::kRelation, tmpl, RecordSeed(rng));
    const std::string ref_a = ObjectRef(frame, objs, p.a);
    const std::string ref_b = ObjectRef(frame, objs, p.b);
    const std::string correct(RelationPhrase(p.judgment.relation));
    const ChoiceSet set = MakeChoices(correct, pool, cfg.choice_options, rng);
    r.question = RenderTemplate(tmpl.text, {{"object_a", ref_a}, {"object_b", ref_b}}) +
                 fmt::format("\nComplete: {} is ___ {}.", ref_b, ref_a) +
                 ChoiceBlock(set.options);
    r.choices = set.options;
    const std::string letter(1, OptionLetter(set.correct));
    const ObjectInstance& ia = objs.instances[p.a];
    const ObjectInstance& ib = objs.instances[p.b];
    r.ground_truth = {{"choice", letter},
                      {"answer_text", correct},
                      {"relation", RelationName(p.judgment.relation)},
                      {"theta", p.judgment.theta},
                      {"distance", p.judgment.distance},
                      {"subject_centroid", PointJson(ia.centroid)},
                      {"object_centroid", PointJson(ib.centroid)}};
    r.answer = SerializeAnswer(Choice{OptionLetter(set.correct)}, AnswerFormat::kChoice);
    r.class_ids = {ia.class_id, ib.class_id};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> CountDistractors(int count, int k) {
  std::vector<int> values;
  for (int v : {count - 1, count + 1, count - 2, count + 2, count * 2}) {
    if (v >= 0 && v != count &&
        std::find(values.begin(), values.end(), v) == values.end()) {
      values.push_back(v);
    }
  }
  for (int extra = count + 3; static_cast<int>(values.size()) < k - 1; ++extra) {
    if (std::find(values.begin(), values.end(), extra) == values.end()) {
      values.push_back(extra);
    }
  }
  std::vector<std::string> out;
  for (int v : values) out.push_back(std::to_string(v));
  return out;
}

std::vector<QaRecord> GenCounting(const SceneFrame& frame, const FrameObjects& objs,
                                  const GenerationConfig& cfg, Rng& rng,
                                  const std::map<ClassId, double>* weights) {
  ValidateChoiceCount(cfg);
  std::vector<QaRecord> out;
  for (const auto& [cls, members] : objs.by_class) {
    double w = 1.0;
    if (weights != nullptr) {
      auto it = weights->find(cls);
      if (it != weights->end()) w = it->second;
    }
    const double expected = cfg.counting_base_rate * w;
    int n = static_cast<int>(std::floor(expected));
    if (rng.Bernoulli(expected - n)) ++n;
    const int count = static_cast<int>(members.size());
    const std::string name = frame.mask.ClassName(cls);
    for (int k = 0; k < n; ++k) {
      const Picked tmpl = PickTemplate(Task::kCounting, rng);
      QaRecord r = NewRecord(frame, Task::kCounting, tmpl, RecordSeed(rng));
      const std::string correct = std::to_string(count);
      const ChoiceSet set = MakeChoices(
          correct, CountDistractors(count, cfg.choice_options), cfg.choice_options, rng);
      r.question = RenderTemplate(tmpl.text, {{"class", name}}) + ChoiceBlock(set.options);
      r.choices = set.options;
      r.ground_truth = {{"choice", std::string(1, OptionLetter(set.correct))},
                        {"answer_text", correct},
                        {"value", count},
                        {"class_id", cls},
                        {"class_name", name}};
      r.answer = SerializeAnswer(Choice{OptionLetter(set.correct)}, AnswerFormat::kChoice);
      r.class_ids = {cls};
      out.push_back(std::move(r));
    }
  }
  return out;
}

double Round2(double v) { return std::round(v * 100.0) / 100.0; }

std::vector<QaRecord> GenDistance(const SceneFrame& frame, const FrameObjects& objs,
                                  const GenerationConfig&, Rng& rng) {
  if (!frame.HasMetricInputs()) NothingToAsk(frame, Task::kDistance, "no LiDAR/camera");
  const DepthIndex index(frame);
  std::vector<QaRecord> out;
  for (std::size_t i = 0; i < objs.instances.size(); ++i) {
    const ObjectInstance& inst = objs.instances[i];
    double depth;
    try {
      depth = index.MeanDepth(inst);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoLidarCoverage) continue;
      throw;
    }
    const Picked tmpl = PickTemplate(Task::kDistance, rng);
    QaRecord r = NewRecord(frame, Task::kDistance, tmpl, RecordSeed(rng));
    const std::string ref = ObjectRef(frame, objs, i);
    r.question = RenderTemplate(tmpl.text, {{"object", ref}}) +
                 "\nAnswer with a distance in meters.";
    const double value = Round2(depth);
    const std::string text = fmt::format("{:.2f} meters", value);
    r.ground_truth = {{"value", value},
                      {"text", text},
                      {"class_id", inst.class_id},
                      {"class_name", frame.mask.ClassName(inst.class_id)},
                      {"bbox", BoxJson(inst.bbox)}};
    r.answer = text;
    r.class_ids = {inst.class_id};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QaRecord> GenHeight(const SceneFrame& frame, const FrameObjects& objs,
                                const GenerationConfig& cfg, Rng& rng) {
  if (!frame.HasHeightInputs()) {
    NothingToAsk(frame, Task::kHeight, "no LiDAR/camera/pose");
  }
  const DepthIndex index(frame);
  std::vector<std::optional<double>> heights(objs.instances.size());
  for (std::size_t i = 0; i < objs.instances.size(); ++i) {
    try {
      heights[i] = index.MeanHeight(objs.instances[i]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoLidarCoverage) throw;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < objs.instances.size(); ++a) {
    for (std::size_t b = a + 1; b < objs.instances.size(); ++b) {
      if (!heights[a] || !heights[b]) continue;
      // Answers name the object by class, so both classes must differ.
      if (objs.instances[a].class_id == objs.instances[b].class_id) continue;
      pairs.emplace_back(a, b);
    }
  }
  if (pairs.empty()) return {};
  const std::size_t cap = static_cast<std::size_t>(std::max(cfg.max_records_per_frame, 1));
  std::vector<std::size_t> chosen = rng.SampleDistinct(pairs.size(), std::min(cap, pairs.size()));
  std::sort(chosen.begin(), chosen.end());
  std::vector<QaRecord> out;
  for (std::size_t pi : chosen) {
    auto [a, b] = pairs[pi];
    if (rng.Bernoulli(0.5)) std::swap(a, b);
    const Picked tmpl = PickTemplate(Task::kHeight, rng);
    QaRecord r = NewRecord(frame, Task::kHeight, tmpl, RecordSeed(rng));
    const std::string ref_a = ObjectRef(frame, objs, a);
    const std::string ref_b = ObjectRef(frame, objs, b);
    r.question = RenderTemplate(tmpl.text, {{"object_a", ref_a}, {"object_b", ref_b}});
    const HeightOrder order = CompareHeights(*heights[a], *heights[b], cfg.height_tolerance);
    const std::string name_a = frame.mask.ClassName(objs.instances[a].class_id);
    const std::string name_b = frame.mask.ClassName(objs.instances[b].class_id);
    std::string answer_name;
    std::string text;
    switch (order) {
      case HeightOrder::kAHigher:
        answer_name = name_a;
        text = fmt::format("The {} is higher ({:.2f} m vs {:.2f} m).", name_a,
                           Round2(*heights[a]), Round2(*heights[b]));
        break;
      case HeightOrder::kBHigher:
        answer_name = name_b;
        text = fmt::format("The {} is higher ({:.2f} m vs {:.2f} m).", name_b,
                           Round2(*heights[b]), Round2(*heights[a]));
        break;
      case HeightOrder::kComparable:
        text = fmt::format("They are about the same height ({:.2f} m and {:.2f} m).",
                           Round2(*heights[a]), Round2(*heights[b]));
        break;
    }
    r.ground_truth = {{"heights", json::array({Round2(*heights[a]), Round2(*heights[b])})},
                      {"verdict", HeightOrderName(order)},
                      {"names", json::array({name_a, name_b})},
                      {"answer_name", answer_name},
                      {"text", text}};
    r.answer = text;
    r.class_ids = {objs.instances[a].class_id, objs.instances[b].class_id};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QaRecord> GenColor(const SceneFrame& frame, const FrameObjects& objs,
                               const GenerationConfig& cfg, Rng& rng) {
  ValidateChoiceCount(cfg);
  std::vector<QaRecord> out;
  for (std::size_t i = 0; i < objs.instances.size(); ++i) {
    const ObjectInstance& inst = objs.instances[i];
    const ColorDescriptor desc = DominantColor(frame, inst, cfg.color);
    std::vector<std::string> pool;
    for (int c = 0; c < kBaseColorCount; ++c) {
      if (static_cast<BaseColor>(c) != desc.base) {
        pool.emplace_back(BaseColorName(static_cast<BaseColor>(c)));
      }
    }
    const Picked tmpl = PickTemplate(Task::kColor, rng);
    QaRecord r = NewRecord(frame, Task::kColor, tmpl, RecordSeed(rng));
    const std::string correct = desc.ToString();
    const ChoiceSet set = MakeChoices(correct, pool, cfg.choice_options, rng);
    r.question = RenderTemplate(tmpl.text, {{"object", ObjectRef(frame, objs, i)}}) +
                 ChoiceBlock(set.options);
    r.choices = set.options;
    r.ground_truth = {{"choice", std::string(1, OptionLetter(set.correct))},
                      {"answer_text", correct},
                      {"class_id", inst.class_id},
                      {"bbox", BoxJson(inst.bbox)}};
    r.answer = SerializeAnswer(Choice{OptionLetter(set.correct)}, AnswerFormat::kChoice);
    r.class_ids = {inst.class_id};
    out.push_back(std::move(r));
  }
  return out;
}

// Coarse 3x3 placement label for layout summaries.
std::string GridCell(const SceneFrame& frame, Point2 c) {
  static constexpr const char* kRows[] = {"top", "middle", "bottom"};
  static constexpr const char* kCols[] = {"left", "center", "right"};
  const int col = std::clamp(static_cast<int>(3.0 * c.x / frame.width()), 0, 2);
  const int row = std::clamp(static_cast<int>(3.0 * c.y / frame.height()), 0, 2);
  if (row == 1 && col == 1) return "center";
  return fmt::format("{}-{}", kRows[row], kCols[col]);
}

json LayoutSummary(const SceneFrame& frame, const FrameObjects& objs) {
  json layout = json::array();
  for (const auto& [cls, members] : objs.by_class) {
    std::set<std::string> cells;
    std::size_t area = 0;
    for (std::size_t idx : members) {
      cells.insert(GridCell(frame, objs.instances[idx].centroid));
      area += objs.instances[idx].area();
    }
    layout.push_back({{"class", frame.mask.ClassName(cls)},
                      {"instances", members.size()},
                      {"pixel_share",
                       Round2(100.0 * area / (frame.width() * frame.height())) / 100.0},
                      {"regions", std::vector<std::string>(cells.begin(), cells.end())}});
  }
  return layout;
}

std::vector<std::string> InventoryFrom(const SceneFrame& frame, const FrameObjects& objs) {
  std::set<std::string> names;
  for (const auto& [cls, members] : objs.by_class) names.insert(frame.mask.ClassName(cls));
  return {names.begin(), names.end()};
}

std::vector<QaRecord> GenCaptionSingle(const SceneFrame& frame,
                                       const GenerationConfig& cfg, Rng& rng) {
  const FrameObjects objs = CollectObjects(frame, cfg);
  const Picked tmpl = PickTemplate(Task::kCaptionSingle, rng);
  QaRecord r = NewRecord(frame, Task::kCaptionSingle, tmpl, RecordSeed(rng));
  r.question = std::string(tmpl.text);
  r.pending = true;
  r.context = {{"classes", InventoryFrom(frame, objs)},
               {"layout", LayoutSummary(frame, objs)},
               {"image_size", json::array({frame.width(), frame.height()})}};
  for (const auto& [cls, members] : objs.by_class) r.class_ids.push_back(cls);
  return {std::move(r)};
}

std::vector<QaRecord> GenCaptionMulti(std::span<const SceneFrame* const> frames,
                                      const GenerationConfig& cfg, Rng& rng) {
  if (frames.size() < 2) {
    Fail(ErrorCode::kNothingToAsk, "caption_multi needs at least two frames");
  }
  const Picked tmpl = PickTemplate(Task::kCaptionMulti, rng);
  QaRecord r;
  r.task = Task::kCaptionMulti;
  r.answer_format = AnswerFormat::kOpen;
  r.template_id = tmpl.id;
  r.seed = RecordSeed(rng);
  r.question = RenderTemplate(tmpl.text, {{"count", std::to_string(frames.size())}});
  r.pending = true;
  json per_frame = json::array();
  std::set<std::string> all_classes;
  std::set<ClassId> all_ids;
  for (const SceneFrame* f : frames) {
    r.frame_ids.push_back(f->frame_id);
    const FrameObjects objs = CollectObjects(*f, cfg);
    const auto inventory = InventoryFrom(*f, objs);
    all_classes.insert(inventory.begin(), inventory.end());
    for (const auto& [cls, m] : objs.by_class) all_ids.insert(cls);
    per_frame.push_back({{"frame_id", f->frame_id},
                         {"classes", inventory},
                         {"layout", LayoutSummary(*f, objs)}});
  }
  r.class_ids.assign(all_ids.begin(), all_ids.end());
  r.context = {{"classes", std::vector<std::string>(all_classes.begin(), all_classes.end())},
               {"frames", per_frame}};
  std::string key;
  for (const std::string& id : r.frame_ids) key += (key.empty() ? "" : "+") + id;
  r.id = fmt::format("{}:{}:0", key, TaskName(Task::kCaptionMulti));
  return {std::move(r)};
}

std::vector<QaRecord> GenFunction(const SceneFrame& frame, const GenerationConfig& cfg,
                                  Rng& rng) {
  if (!cfg.function_table || cfg.function_table->empty()) {
    Fail(ErrorCode::kMissingFunctionTable,
         "function QA needs a class -> description table");
  }
  const FrameObjects objs = CollectObjects(frame, cfg);
  std::vector<QaRecord> out;
  for (const ObjectInstance& inst : objs.instances) {
    const std::string name = frame.mask.ClassName(inst.class_id);
    auto it = cfg.function_table->find(name);
    if (it == cfg.function_table->end() || it->second.empty() || inst.area() < 5) continue;
    const Pixel p = SamplePointsInMask(inst, 5, rng).front();
    const std::string& description = it->second[rng.UniformIndex(it->second.size())];
    const Picked tmpl = PickTemplate(Task::kFunction, rng);
    QaRecord r = NewRecord(frame, Task::kFunction, tmpl, RecordSeed(rng));
    r.question = RenderTemplate(tmpl.text, {{"x", std::to_string(p.x)},
                                            {"y", std::to_string(p.y)}});
    r.ground_truth = {{"class_id", inst.class_id},
                      {"class_name", name},
                      {"point", PixelJson(p)},
                      {"text", description}};
    r.answer = description;
    r.class_ids = {inst.class_id};
    r.context = {{"class_name", name}, {"descriptions", it->second}};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<QaRecord> GenLanding(const SceneFrame& frame, const GenerationConfig& cfg,
                                 Rng& rng) {
  const LandingContext ctx = BuildLandingContext(frame, cfg);
  const Picked tmpl = PickTemplate(Task::kLanding, rng);
  QaRecord r = NewRecord(frame, Task::kLanding, tmpl, RecordSeed(rng));
  r.question = std::string(tmpl.text) +
               "\nReply with JSON: {\"feasibility\": \"safe|cautious|unsafe\", "
               "\"confidence\": 0-1, \"region\": ..., \"hazards\": [...], "
               "\"reasoning\": ...}.";
  r.pending = true;
  r.context = LandingContextToJson(ctx);
  return {std::move(r)};
}

}  // namespace

std::map<ClassId, double> CountingWeights(
    const std::map<ClassId, std::size_t>& frames_per_class, double cap) {
  std::size_t f_max = 0;
  for (const auto& [cls, f] : frames_per_class) f_max = std::max(f_max, f);
  std::map<ClassId, double> weights;
  for (const auto& [cls, f] : frames_per_class) {
    if (f == 0) continue;
    weights[cls] = std::min(cap, static_cast<double>(f_max) / static_cast<double>(f));
  }
  return weights;
}

std::vector<QaRecord> GenerateGeometricQa(const SceneFrame& frame, Task task,
                                          const GenerationConfig& cfg, Rng& rng,
                                          const std::map<ClassId, double>* weights) {
  std::vector<QaRecord> records;
  if (task == Task::kFreespace) {
    records = GenFreespace(frame, cfg, rng);
  } else {
    const FrameObjects objs = CollectObjects(frame, cfg);
    switch (task) {
      case Task::kBox: records = GenBox(frame, objs, cfg, rng); break;
      case Task::kPoint: records = GenPoint(frame, objs, cfg, rng); break;
      case Task::kReversePoint: records = GenReversePoint(frame, objs, cfg, rng); break;
      case Task::kRelation: records = GenRelation(frame, objs, cfg, rng); break;
      case Task::kCounting: records = GenCounting(frame, objs, cfg, rng, weights); break;
      default:
        Fail(ErrorCode::kInvalidArgument,
             fmt::format("{} is not a geometric task", TaskName(task)));
    }
  }
  if (records.empty()) NothingToAsk(frame, task, "no suitable content");
  return Finalize(std::move(records), frame.frame_id, task, cfg, rng);
}

std::vector<QaRecord> GenerateMetricQa(const SceneFrame& frame, Task task,
                                       const GenerationConfig& cfg, Rng& rng) {
  const FrameObjects objs = CollectObjects(frame, cfg);
  std::vector<QaRecord> records;
  switch (task) {
    case Task::kDistance: records = GenDistance(frame, objs, cfg, rng); break;
    case Task::kHeight: records = GenHeight(frame, objs, cfg, rng); break;
    default:
      Fail(ErrorCode::kInvalidArgument,
           fmt::format("{} is not a metric task", TaskName(task)));
  }
  if (records.empty()) NothingToAsk(frame, task, "no object with LiDAR coverage");
  return Finalize(std::move(records), frame.frame_id, task, cfg, rng);
}

std::vector<QaRecord> GenerateColorQa(const SceneFrame& frame,
                                      const GenerationConfig& cfg, Rng& rng) {
  const FrameObjects objs = CollectObjects(frame, cfg);
  std::vector<QaRecord> records = GenColor(frame, objs, cfg, rng);
  if (records.empty()) NothingToAsk(frame, Task::kColor, "no object instances");
  return Finalize(std::move(records), frame.frame_id, Task::kColor, cfg, rng);
}

std::vector<QaRecord> GenerateSemanticContext(std::span<const SceneFrame* const> frames,
                                              Task task, const GenerationConfig& cfg,
                                              Rng& rng) {
  if (frames.empty()) Fail(ErrorCode::kInvalidArgument, "no frames given");
  const SceneFrame& first = *frames.front();
  std::vector<QaRecord> records;
  switch (task) {
    case Task::kCaptionMulti: return GenCaptionMulti(frames, cfg, rng);
    case Task::kCaptionSingle: records = GenCaptionSingle(first, cfg, rng); break;
    case Task::kFunction: records = GenFunction(first, cfg, rng); break;
    case Task::kLanding: records = GenLanding(first, cfg, rng); break;
    default:
      Fail(ErrorCode::kInvalidArgument,
           fmt::format("{} is not a semantic task", TaskName(task)));
  }
  if (records.empty()) NothingToAsk(first, task, "no described classes present");
  return Finalize(std::move(records), first.frame_id, task, cfg, rng);
}

LandingContext BuildLandingContext(const SceneFrame& frame, const GenerationConfig& cfg) {
  LandingContext ctx;
  const FrameObjects objs = CollectObjects(frame, cfg);
  for (const ObjectInstance& inst : objs.instances) {
    const std::string name = frame.mask.ClassName(inst.class_id);
    ++ctx.target_distribution[name];
    auto hz = cfg.hazard_table.find(name);
    if (hz != cfg.hazard_table.end()) {
      ctx.hazards.push_back({name, inst.centroid, hz->second});
    }
  }
  if (cfg.background_class) {
    // Samples are not needed here; a fixed generator keeps this pure.
    Rng unused(0);
    for (const FreeRegion& region :
         ExtractFreeSpace(frame.mask, cfg.background_class, unused,
                          cfg.landing_min_area, cfg.connectivity)) {
      ctx.airspace.push_back(
          {region.area(), region.component.bbox, region.component.centroid});
    }
  }
  std::map<ClassId, std::size_t> counts;
  for (ClassId id : frame.mask.class_ids) ++counts[id];
  const double total = static_cast<double>(frame.mask.class_ids.size());
  for (const auto& [id, n] : counts) {
    ctx.surface_features[frame.mask.ClassName(id)] = Round2(100.0 * n / total) / 100.0;
  }
  return ctx;
}

json LandingContextToJson(const LandingContext& ctx) {
  json airspace = json::array();
  for (const AirspaceRegion& a : ctx.airspace) {
    airspace.push_back({{"area", a.area},
                        {"bbox", BoxJson(a.bbox)},
                        {"centroid", json::array({Round2(a.centroid.x), Round2(a.centroid.y)})}});
  }
  json hazards = json::array();
  for (const Hazard& h : ctx.hazards) {
    hazards.push_back({{"class", h.class_name},
                       {"location", json::array({Round2(h.location.x), Round2(h.location.y)})},
                       {"risk", h.risk}});
  }
  return {{"target_distribution", ctx.target_distribution},
          {"airspace", airspace},
          {"hazards", hazards},
          {"surface_features", ctx.surface_features}};
}

std::vector<std::string> ClassInventory(const SceneFrame& frame,
                                        const GenerationConfig& cfg) {
  return InventoryFrom(frame, CollectObjects(frame, cfg));
}

std::string BuildGenerationPrompt(const QaRecord& record) {
  switch (record.task) {
    case Task::kCaptionSingle:
    case Task::kCaptionMulti:
      return fmt::format(
          "You are looking at aerial images captured by a UAV. Semantic "
          "annotations report the following scene content:\n{}\n"
          "Write a caption that covers scene composition, the spatial "
          "distribution of objects, environmental context{}. Emphasize the "
          "overhead perspective.\nQuestion: {}",
          record.context.dump(), record.task == Task::kCaptionMulti
                                     ? " and how the view varies across the frames"
                                     : "",
          record.question);
    case Task::kLanding:
      return fmt::format(
          "You are assessing a UAV landing site from an aerial image. Extracted "
          "scene facts (airspace regions are open areas larger than the landing "
          "threshold, in pixels):\n{}\nProduce a structured assessment with "
          "feasibility (safe, cautious or unsafe), a confidence score in [0, 1], "
          "a recommended landing region, identified hazards with risk levels, and "
          "the safety reasoning.\nQuestion: {}",
          record.context.dump(), record.question);
    default:
      return record.question;
  }
}

std::vector<QaRecord> GenerateForFrame(const SceneFrame& frame, Task task,
                                       const GenerationConfig& cfg,
                                       std::uint64_t global_seed,
                                       const std::map<ClassId, double>* weights) {
  Rng rng(DeriveSeed(global_seed, frame.frame_id, TaskName(task)));
  switch (task) {
    case Task::kBox:
    case Task::kPoint:
    case Task::kReversePoint:
    case Task::kFreespace:
    case Task::kRelation:
    case Task::kCounting:
      return GenerateGeometricQa(frame, task, cfg, rng, weights);
    case Task::kDistance:
    case Task::kHeight:
      return GenerateMetricQa(frame, task, cfg, rng);
    case Task::kColor:
      return GenerateColorQa(frame, cfg, rng);
    case Task::kCaptionSingle:
    case Task::kFunction:
    case Task::kLanding: {
      const SceneFrame* ptr = &frame;
      return GenerateSemanticContext(std::span<const SceneFrame* const>(&ptr, 1), task,
                                     cfg, rng);
    }
    case Task::kCaptionMulti:
      break;
  }
  Fail(ErrorCode::kInvalidArgument, "caption_multi is generated per frame window");
}

}  // namespace skyforge
