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

#ifndef SKYFORGE_QA_GENERATION_HPP_
#define SKYFORGE_QA_GENERATION_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skyforge/color.hpp"
#include "skyforge/geometry.hpp"
#include "skyforge/projection.hpp"
#include "skyforge/qa_record.hpp"
#include "skyforge/rng.hpp"
#include "skyforge/scene.hpp"

namespace skyforge {

// class name -> 2-3 hand-written descriptions of what the object is for.
using FunctionTable = std::map<std::string, std::vector<std::string>>;
// class name -> risk level ("low" | "medium" | "high").
using HazardTable = std::map<std::string, std::string>;

struct GenerationConfig {
  std::optional<ClassId> background_class;
  Connectivity connectivity = Connectivity::kFour;
  // Components smaller than this are ignored by every generator.
  int min_instance_area = 1;
  int free_space_min_area = kDefaultFreeSpaceMinArea;
  double relation_min_distance = kDefaultRelationMinDistance;
  int landing_min_area = 1000;
  double height_tolerance = kDefaultHeightTolerance;
  // Options per choice record, in [4, 6].
  int choice_options = 4;
  // Upper bound on records of one task drawn from one frame.
  int max_records_per_frame = 4;
  // Counting stratification: a class with weight w yields base_rate * w
  // records per frame in expectation (integer part plus a Bernoulli draw).
  double counting_base_rate = 0.5;
  double counting_weight_cap = 10.0;
  int caption_sequence_length = 3;
  ColorConfig color;
  std::optional<FunctionTable> function_table;
  HazardTable hazard_table;
};

// Inverse-frequency weights: w_c = min(cap, f_max / f_c) where f_c is the
// number of frames in which class c occurs.
std::map<ClassId, double> CountingWeights(
    const std::map<ClassId, std::size_t>& frames_per_class, double cap);

// Ground-truth payloads written into QaRecord::ground_truth:
//   box            {"class_id","class_name","boxes":[[x1,y1,x2,y2],...]}
//   point          {"class_id","class_name","points":[[x,y],...],"mask_runs":[[y,x0,x1],...]}
//   freespace      {"points":[[x,y],...],"mask_runs":[...],"region_areas":[int]}
//   reverse_point  {"class_id","class_name","point":[x,y],"points":[[x,y],...],"text"}
//   relation       {"choice","answer_text","relation","theta","distance",
//                   "subject_centroid":[x,y],"object_centroid":[x,y]}
//   counting       {"choice","answer_text","value","class_id","class_name"}
//   color          {"choice","answer_text","class_id","bbox":[...]}
//   distance       {"value","text","class_id","class_name","bbox":[...]}
//   height         {"heights":[a,b],"verdict","names":[a,b],"answer_name","text"}
//   function       {"class_id","class_name","point":[x,y],"text"}
//   caption/landing {"text"} once completed; {} while pending
//
// Every generator throws NothingToAsk when the frame offers no content for
// the task.

// task in {box, point, reverse_point, freespace, relation, counting}.
// `counting_weights` defaults to weight 1 for every class.
std::vector<QaRecord> GenerateGeometricQa(
    const SceneFrame& frame, Task task, const GenerationConfig& cfg, Rng& rng,
    const std::map<ClassId, double>* counting_weights = nullptr);

// task in {distance, height}. Frames lacking cloud/camera (or pose for
// height) yield NothingToAsk.
std::vector<QaRecord> GenerateMetricQa(const SceneFrame& frame, Task task,
                                       const GenerationConfig& cfg, Rng& rng);

std::vector<QaRecord> GenerateColorQa(const SceneFrame& frame,
                                      const GenerationConfig& cfg, Rng& rng);

// task in {caption_single, caption_multi, function, landing}. Caption and
// landing records are emitted pending with a deterministic context; function
// records are complete (point + description table lookup) and throw
// MissingFunctionTable when no table is configured.
std::vector<QaRecord> GenerateSemanticContext(
    std::span<const SceneFrame* const> frames, Task task,
    const GenerationConfig& cfg, Rng& rng);

// Landing context pieces, exposed for tests and prompt building.
struct AirspaceRegion {
  std::size_t area = 0;
  Box bbox;
  Point2 centroid;
};

struct Hazard {
  std::string class_name;
  Point2 location;
  std::string risk;
};

struct LandingContext {
  std::map<std::string, int> target_distribution;  // class name -> instances
  std::vector<AirspaceRegion> airspace;            // every area > min_area
  std::vector<Hazard> hazards;
  std::map<std::string, double> surface_features;  // class name -> pixel share
};

LandingContext BuildLandingContext(const SceneFrame& frame,
                                   const GenerationConfig& cfg);
nlohmann::json LandingContextToJson(const LandingContext& ctx);

// Sorted names of the non-background classes present in the mask.
std::vector<std::string> ClassInventory(const SceneFrame& frame,
                                        const GenerationConfig& cfg);

// Prompt that asks a generation model to write the pending answer.
std::string BuildGenerationPrompt(const QaRecord& record);

// Dispatches to the generator owning `task`, drawing from
// Rng(DeriveSeed(seed, frame_id, task)). caption_multi needs a frame window
// and is not handled here.
std::vector<QaRecord> GenerateForFrame(
    const SceneFrame& frame, Task task, const GenerationConfig& cfg,
    std::uint64_t global_seed,
    const std::map<ClassId, double>* counting_weights = nullptr);

}  // namespace skyforge

#endif  // SKYFORGE_QA_GENERATION_HPP_
