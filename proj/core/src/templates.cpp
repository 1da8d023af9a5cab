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

#include "skyforge/templates.hpp"

#include <algorithm>

#include "skyforge/error.hpp"

namespace skyforge {
namespace {

constexpr std::string_view kBox[] = {
    "Detect every {class} in this aerial image and give its bounding box.",
    "Locate all {class} instances visible from the drone.",
    "Draw bounding boxes around each {class} in the scene.",
    "Where are the {class} regions? Answer with bounding boxes.",
    "Find the {class} in this UAV view and output their boxes.",
    "Give the pixel bounding box of every {class} you can see.",
    "Mark each {class} in the image with an axis-aligned box.",
    "Identify the {class} objects and report their bounding boxes.",
    "Output bounding boxes for all {class} areas in this overhead shot.",
    "From the drone's viewpoint, localize every {class}.",
    "Please box each {class} appearing in the image.",
    "What are the bounding boxes of the {class} instances?",
    "Enclose every {class} in the picture with a rectangle.",
    "Provide the box coordinates (x1, y1, x2, y2) for each {class}.",
    "Spot all {class} regions in this bird's-eye image and box them.",
    "List the bounding boxes of every visible {class}.",
    "Which parts of the image contain a {class}? Return boxes.",
    "Scan the aerial frame and box each {class}.",
    "Localize the {class} objects seen from above using bounding boxes.",
    "Return a bounding box for every separate {class} in view.",
    "Outline each {class} below the drone with a bounding box.",
    "Using pixel coordinates, box every {class} in this scene.",
};

constexpr std::string_view kColor[] = {
    "What is the dominant color of {object}?",
    "Which color best describes {object}?",
    "From the drone's view, what color is {object}?",
    "Identify the main color of {object}.",
    "What color does {object} appear to be in this aerial image?",
    "Select the color that matches {object}.",
    "How would you describe the color of {object}?",
    "Looking down from above, what is the color of {object}?",
    "Choose the primary color of {object}.",
    "What is the prevailing hue of {object}?",
    "Which of the following is the color of {object}?",
    "Determine the color of {object} in this UAV image.",
    "What color is {object} painted or covered in?",
    "Name the dominant color visible on {object}.",
    "In this overhead frame, {object} is mostly what color?",
    "Pick the color that best fits {object}.",
    "What is the overall color of {object}?",
    "Tell me the main color of {object}.",
    "Which color option matches {object} most closely?",
    "Observe {object}. What color is it?",
    "Judging from the image, what is the color of {object}?",
};

constexpr std::string_view kDistance[] = {
    "How far is {object} from the camera, in meters?",
    "Estimate the distance between the drone camera and {object}.",
    "What is the approximate depth of {object} from the UAV?",
    "How many meters separate the camera from {object}?",
    "Give the distance from the drone to {object}.",
    "Approximately how far away is {object}?",
    "Estimate the camera-to-object distance for {object}.",
    "What is the range from the UAV camera to {object} in meters?",
    "How distant is {object} from the sensor?",
    "From the drone's position, how far is {object}?",
    "Measure the depth of {object} relative to the camera.",
    "What is the distance, in meters, to {object}?",
    "How far below the camera does {object} lie?",
    "Estimate how many meters the drone is from {object}.",
    "Tell me the approximate distance to {object}.",
    "What is the line-of-sight distance to {object}?",
    "Report the average depth of {object} as seen from the camera.",
    "How far would the drone need to descend along its view to reach {object}?",
    "Give your best estimate of the distance to {object}.",
    "Roughly how many meters away from the camera is {object}?",
    "In meters, what is the depth of {object}?",
};

constexpr std::string_view kHeight[] = {
    "Which is higher: {object_a} or {object_b}?",
    "Compare the heights of {object_a} and {object_b}. Which one is taller?",
    "Is {object_a} higher than {object_b}?",
    "Between {object_a} and {object_b}, which stands taller?",
    "Which object reaches a greater altitude, {object_a} or {object_b}?",
    "Tell me whether {object_a} or {object_b} is higher above the ground.",
    "Which has the higher top surface: {object_a} or {object_b}?",
    "From the drone's view, is {object_a} or {object_b} taller?",
    "Which one is closer to the drone in altitude, {object_a} or {object_b}?",
    "Compare {object_a} with {object_b}: which is higher?",
    "Determine which of {object_a} and {object_b} is taller.",
    "Which rises higher, {object_a} or {object_b}?",
    "Is {object_b} taller than {object_a}, or the other way around?",
    "Which is at a greater world height: {object_a} or {object_b}?",
    "Of {object_a} and {object_b}, which one is higher?",
    "Which object would a low-flying drone hit first: {object_a} or {object_b}?",
    "Estimate which is taller, {object_a} or {object_b}.",
    "Are {object_a} and {object_b} of similar height, or is one higher?",
    "Which is elevated more: {object_a} or {object_b}?",
    "Rank {object_a} and {object_b} by height. Which comes first?",
    "Height check: {object_a} versus {object_b}. Which is higher?",
};

constexpr std::string_view kPoint[] = {
    "Point to the {class} in this image.",
    "Give several pixel points that lie on a {class}.",
    "Where is the {class}? Answer with points.",
    "Mark points located on the {class}.",
    "Indicate some pixel coordinates inside a {class}.",
    "Select points that fall on the {class} in this aerial view.",
    "Show me where the {class} is by pointing to it.",
    "Provide a few points within the {class} region.",
    "Point at the {class} visible from the drone.",
    "Which pixels belong to the {class}? Give points.",
    "Place points on the {class}.",
    "Output coordinates of points inside the {class}.",
    "Identify the {class} by pointing to several pixels on it.",
    "Locate the {class} and mark it with points.",
    "Tap on the {class} in this overhead image.",
    "Give me points that land on the {class}.",
    "Using points, show where the {class} is.",
    "Point out the {class} seen from above.",
    "Return pixel points located inside the {class}.",
    "Mark the {class} with a handful of points.",
    "Where can the {class} be found? Point to it.",
};

constexpr std::string_view kReversePoint[] = {
    "What object is located at pixel ({x}, {y})?",
    "Which category does the point ({x}, {y}) belong to?",
    "Name the object found at ({x}, {y}) in this aerial image.",
    "What is at coordinate ({x}, {y})?",
    "Identify the class of the object at point ({x}, {y}).",
    "The point ({x}, {y}) lies on what kind of object?",
    "What does the pixel ({x}, {y}) show?",
    "Tell me what is located at ({x}, {y}).",
    "Which object covers the pixel ({x}, {y})?",
    "At ({x}, {y}), what can be seen from the drone?",
    "What category is the region containing ({x}, {y})?",
    "Recognize the object under the point ({x}, {y}).",
    "What is the semantic class at position ({x}, {y})?",
    "Look at ({x}, {y}). What object is there?",
    "Which type of object is at image coordinate ({x}, {y})?",
    "What would the drone find at pixel ({x}, {y})?",
    "Classify the object at location ({x}, {y}).",
    "What sits at ({x}, {y}) in this overhead view?",
    "Determine the object category at ({x}, {y}).",
    "What is the thing located at the point ({x}, {y})?",
    "Name the category of the pixel at ({x}, {y}).",
};

constexpr std::string_view kFreespace[] = {
    "Point to free space where the drone could safely descend.",
    "Mark points in open areas free of obstacles.",
    "Where is there unobstructed free space? Answer with points.",
    "Indicate points located in clear, open ground.",
    "Find open areas in the image and point to them.",
    "Give several points that lie in free space.",
    "Show free regions suitable for navigation using points.",
    "Point out areas that contain no objects.",
    "Select points in large empty regions of the scene.",
    "Where can the drone fly down without obstacles? Give points.",
    "Mark the obstacle-free zones with points.",
    "Provide points inside open background areas.",
    "Identify clear space in this aerial view by pointing.",
    "Point to regions that are free of buildings, vehicles and vegetation.",
    "Which areas are empty? Answer with pixel points.",
    "Locate free space and return a few points in it.",
    "Tap on open ground suitable for a landing approach.",
    "Output points lying in navigable free space.",
    "Show me where there is free space by pointing.",
    "Give coordinates of points in unoccupied areas.",
    "Point to any large open region in the image.",
};

constexpr std::string_view kRelation[] = {
    "Where is {object_b} relative to {object_a}?",
    "What is the position of {object_b} with respect to {object_a}?",
    "From the drone's view, in which direction is {object_b} from {object_a}?",
    "How is {object_b} positioned compared with {object_a}?",
    "Describe the spatial relation of {object_b} to {object_a}.",
    "In the image, {object_b} lies in which direction from {object_a}?",
    "Relative to {object_a}, where can {object_b} be found?",
    "Which direction would you move from {object_a} to reach {object_b}?",
    "Where does {object_b} sit in relation to {object_a}?",
    "Taking {object_a} as reference, where is {object_b}?",
    "What is the relative location of {object_b} given {object_a}?",
    "Choose the relation that describes {object_b} with respect to {object_a}.",
    "Looking at the image, is {object_b} above, below, left or right of {object_a}?",
    "From {object_a}, in what direction is {object_b}?",
    "Select the direction of {object_b} as seen from {object_a}.",
    "Where is {object_b} located when compared with {object_a}?",
    "How would you describe where {object_b} is relative to {object_a}?",
    "With {object_a} as the anchor, where is {object_b}?",
    "Which option gives the position of {object_b} relative to {object_a}?",
    "What is the direction from {object_a} to {object_b} in image coordinates?",
    "Spatially, where does {object_b} lie compared to {object_a}?",
};

constexpr std::string_view kCaptionSingle[] = {
    "Describe this aerial scene.",
    "Write a caption for this drone image.",
    "Summarize what the UAV sees in this frame.",
    "Give a detailed description of the scene from above.",
    "What does this overhead image show?",
    "Describe the layout of objects in this aerial view.",
    "Provide a caption covering the scene composition and object distribution.",
    "Explain what is visible in this bird's-eye image.",
    "Caption this UAV frame.",
    "Describe the environment captured by the drone.",
    "Write a short paragraph describing this aerial photo.",
    "What kind of place is shown in this drone image? Describe it.",
    "Describe the main objects and where they are in the image.",
    "Give an overview of this scene as seen from the air.",
    "Summarize the spatial arrangement of the scene.",
    "Describe the scene, focusing on features visible from above.",
    "Produce a descriptive caption for this image.",
    "Tell me what this aerial frame contains.",
    "Describe the surroundings below the drone.",
    "How would you describe this scene to a drone operator?",
    "Provide a scene description emphasizing the overhead perspective.",
};

constexpr std::string_view kCaptionMulti[] = {
    "Describe this sequence of {count} aerial frames.",
    "Summarize how the scene changes across these {count} drone images.",
    "Write a caption covering all {count} frames.",
    "What does the drone observe over these {count} images?",
    "Describe the environment across the {count} consecutive frames.",
    "Give a combined description of these {count} UAV views.",
    "Explain the spatial variation between the {count} frames.",
    "Caption this {count}-frame aerial sequence.",
    "Describe what stays the same and what changes in these {count} images.",
    "Summarize the scene composition over the {count} frames.",
    "How does the view evolve across these {count} drone frames?",
    "Provide a description of the area covered by these {count} images.",
    "Describe the objects seen across the {count} frames and their layout.",
    "Write a paragraph describing this {count}-image flight segment.",
    "What does this sequence of {count} overhead frames show?",
    "Give an overview of the flight path scenery across {count} images.",
    "Describe the scene and its variations in these {count} frames.",
    "Summarize the multi-view aerial observation of {count} frames.",
    "Caption the sequence, noting differences among the {count} frames.",
    "Describe the region traversed in these {count} drone images.",
    "Tell me what the UAV saw across these {count} frames.",
};

constexpr std::string_view kCounting[] = {
    "How many {class} instances are visible in this image?",
    "Count the {class} objects seen from the drone.",
    "What is the number of separate {class} regions?",
    "How many {class} can you find in the scene?",
    "Count every {class} in this aerial view.",
    "How many distinct {class} appear in the image?",
    "What is the total count of {class} in this frame?",
    "Tell me how many {class} are present.",
    "Number of {class} visible from above?",
    "How many individual {class} does the image contain?",
    "Count the {class} in this UAV image.",
    "How many {class} are there below the drone?",
    "Determine how many {class} exist in the scene.",
    "What is the count of {class} objects?",
    "How many separate {class} can be seen in this overhead shot?",
    "Give the number of {class} in the picture.",
    "How many {class} instances does the drone observe?",
    "Count all visible {class}.",
    "How many {class} are in view?",
    "Select the number of {class} in this image.",
    "Exactly how many {class} are shown?",
};

constexpr std::string_view kFunction[] = {
    "What is the function of the object at ({x}, {y})?",
    "What is the object at pixel ({x}, {y}) used for?",
    "Describe the purpose of the object located at ({x}, {y}).",
    "What role does the object at ({x}, {y}) serve?",
    "Explain what the thing at ({x}, {y}) is for.",
    "For a drone operator, what is the function of the object at ({x}, {y})?",
    "What is the use of the structure at point ({x}, {y})?",
    "The point ({x}, {y}) lies on an object. What does it do?",
    "What purpose does the object at coordinate ({x}, {y}) have?",
    "Describe the function of whatever is at ({x}, {y}).",
    "Why is the object at ({x}, {y}) there? What is it used for?",
    "What does the object at ({x}, {y}) provide?",
    "What is the practical use of the object found at ({x}, {y})?",
    "Identify the function of the region at ({x}, {y}).",
    "How is the object at ({x}, {y}) typically used?",
    "What is the object at ({x}, {y}) designed for?",
    "Explain the role of the object under pixel ({x}, {y}).",
    "What service does the object at ({x}, {y}) offer?",
    "What is the intended function of the thing at ({x}, {y})?",
    "Describe how the object at ({x}, {y}) is used in this scene.",
    "What is the object located at ({x}, {y}) meant for?",
};

constexpr std::string_view kLanding[] = {
    "Assess whether it is safe for the drone to land in this scene.",
    "Is this area suitable for a UAV landing? Give a structured assessment.",
    "Evaluate the landing safety of the visible area.",
    "Can the drone land here safely? Explain the risks.",
    "Provide a landing safety analysis for this scene.",
    "Classify the landing feasibility (safe, cautious, unsafe) for this image.",
    "Where could the drone land, and how safe would it be?",
    "Analyze this aerial view for a safe landing spot.",
    "Give a landing recommendation with hazards and confidence.",
    "Is there a safe landing zone in this image?",
    "Evaluate hazards and landing options for the drone.",
    "Rate the landing safety of this scene and justify it.",
    "Should the UAV attempt to land here? Provide an assessment.",
    "Identify a landing area and the hazards around it.",
    "Assess the risks of landing in the area shown.",
    "Provide feasibility, confidence, recommended region and hazards for landing.",
    "How safe is it to set the drone down in this scene?",
    "Perform a landing safety check on this aerial frame.",
    "Judge whether the ground below is suitable for landing.",
    "Recommend a landing area and list potential hazards.",
    "Give a structured landing safety report for this scene.",
};

template <std::size_t N>
constexpr std::span<const std::string_view> Span(const std::string_view (&a)[N]) {
  return {a, N};
}

constexpr std::string_view kSlotsClass[] = {"class"};
constexpr std::string_view kSlotsObject[] = {"object"};
constexpr std::string_view kSlotsPair[] = {"object_a", "object_b"};
constexpr std::string_view kSlotsXY[] = {"x", "y"};
constexpr std::string_view kSlotsCount[] = {"count"};

}  // namespace

const TemplateBank& TemplateBank::Default() {
  static const TemplateBank bank;
  return bank;
}

std::span<const std::string_view> TemplateBank::For(Task task) const {
  switch (task) {
    case Task::kBox: return Span(kBox);
    case Task::kColor: return Span(kColor);
    case Task::kDistance: return Span(kDistance);
    case Task::kHeight: return Span(kHeight);
    case Task::kPoint: return Span(kPoint);
    case Task::kReversePoint: return Span(kReversePoint);
    case Task::kFreespace: return Span(kFreespace);
    case Task::kRelation: return Span(kRelation);
    case Task::kCaptionSingle: return Span(kCaptionSingle);
    case Task::kCaptionMulti: return Span(kCaptionMulti);
    case Task::kCounting: return Span(kCounting);
    case Task::kFunction: return Span(kFunction);
    case Task::kLanding: return Span(kLanding);
  }
  return {};
}

std::span<const std::string_view> TemplateBank::RequiredSlots(Task task) const {
  switch (task) {
    case Task::kBox:
    case Task::kPoint:
    case Task::kCounting: return Span(kSlotsClass);
    case Task::kColor:
    case Task::kDistance: return Span(kSlotsObject);
    case Task::kHeight:
    case Task::kRelation: return Span(kSlotsPair);
    case Task::kReversePoint:
    case Task::kFunction: return Span(kSlotsXY);
    case Task::kCaptionMulti: return Span(kSlotsCount);
    default: return {};
  }
}

std::vector<std::string> TemplateSlots(std::string_view tmpl) {
  std::vector<std::string> slots;
  std::size_t pos = 0;
  while ((pos = tmpl.find('{', pos)) != std::string_view::npos) {
    const std::size_t end = tmpl.find('}', pos);
    if (end == std::string_view::npos) {
      Fail(ErrorCode::kInvalidArgument, "unterminated slot in template");
    }
    std::string name(tmpl.substr(pos + 1, end - pos - 1));
    if (std::find(slots.begin(), slots.end(), name) == slots.end()) {
      slots.push_back(std::move(name));
    }
    pos = end + 1;
  }
  return slots;
}

std::string RenderTemplate(std::string_view tmpl, const SlotValues& slots) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    const std::size_t close = tmpl.find('}', open);
    if (close == std::string_view::npos) {
      Fail(ErrorCode::kInvalidArgument, "unterminated slot in template");
    }
    const std::string_view name = tmpl.substr(open + 1, close - open - 1);
    auto it = slots.find(name);
    if (it == slots.end()) {
      Fail(ErrorCode::kInvalidArgument,
           "no value for slot '" + std::string(name) + "'");
    }
    out.append(it->second);
    pos = close + 1;
  }
  return out;
}

}  // namespace skyforge
