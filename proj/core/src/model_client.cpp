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

#include "skyforge/model_client.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <regex>
#include <semaphore>
#include <thread>

#include "fmt/format.h"
#include "skyforge/answer.hpp"
#include "skyforge/error.hpp"
#include "skyforge/rng.hpp"

namespace skyforge {
using nlohmann::json;

std::string Base64Encode(std::string_view bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const std::uint32_t v = (std::uint32_t{static_cast<std::uint8_t>(bytes[i])} << 16) |
                            (std::uint32_t{static_cast<std::uint8_t>(bytes[i + 1])} << 8) |
                            std::uint32_t{static_cast<std::uint8_t>(bytes[i + 2])};
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back(kAlphabet[v & 63]);
  }
  const std::size_t rest = bytes.size() - i;
  if (rest > 0) {
    std::uint32_t v = std::uint32_t{static_cast<std::uint8_t>(bytes[i])} << 16;
    if (rest == 2) v |= std::uint32_t{static_cast<std::uint8_t>(bytes[i + 1])} << 8;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(rest == 2 ? kAlphabet[(v >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

std::string ImageDataUrl(const std::filesystem::path& png) {
  std::ifstream in(png, std::ios::binary);
  if (!in) Fail(ErrorCode::kMissingFile, fmt::format("cannot read {}", png.string()));
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return "data:image/png;base64," + Base64Encode(bytes);
}

std::string BuildChatBody(const ChatRequest& request) {
  if (request.user.empty()) {
    Fail(ErrorCode::kInvalidArgument, "chat request needs a user message");
  }
  json messages = json::array();
  if (!request.system.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system}});
  }
  json content = json::array();
  content.push_back({{"type", "text"}, {"text", request.user}});
  for (const std::string& image : request.images) {
    const std::string url =
        image.starts_with("data:") ? image : "data:image/png;base64," + image;
    content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
  }
  messages.push_back({{"role", "user"}, {"content", content}});
  return json{{"model", request.model},
              {"messages", messages},
              {"max_tokens", request.max_tokens},
              {"temperature", request.temperature}}
      .dump();
}

std::string ParseChatReply(std::string_view body) {
  const json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    Fail(ErrorCode::kMalformedResponse, "response body is not a JSON object");
  }
  const json* content = nullptr;
  if (auto c = doc.find("choices"); c != doc.end() && c->is_array() && !c->empty()) {
    const json& first = (*c)[0];
    if (auto m = first.find("message"); m != first.end() && m->is_object()) {
      if (auto t = m->find("content"); t != m->end()) content = &*t;
    }
  }
  if (content == nullptr) {
    Fail(ErrorCode::kMalformedResponse, "response lacks choices[0].message.content");
  }
  if (content->is_string()) return content->get<std::string>();
  // Some servers return content as a list of typed parts.
  if (content->is_array()) {
    std::string text;
    for (const json& part : *content) {
      if (part.is_object() && part.value("type", "") == "text") {
        text += part.value("text", "");
      }
    }
    return text;
  }
  Fail(ErrorCode::kMalformedResponse, "message content has unexpected type");
}

std::string ApiKeyFromEnv() {
  const char* key = std::getenv(kApiKeyEnv);
  return key == nullptr ? std::string() : std::string(key);
}

struct HttpChatModel::Limiter {
  explicit Limiter(int n) : slots(n) {}
  std::counting_semaphore<1024> slots;
};

HttpChatModel::HttpChatModel(EndpointConfig config,
                             std::unique_ptr<HttpTransport> transport, Sleeper sleeper)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      sleeper_(std::move(sleeper)) {
  if (config_.max_attempts < 1) {
    Fail(ErrorCode::kInvalidArgument, "max_attempts must be at least 1");
  }
  if (config_.max_in_flight < 1 || config_.max_in_flight > 1024) {
    Fail(ErrorCode::kInvalidArgument, "max_in_flight must be in [1, 1024]");
  }
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  limiter_ = std::make_unique<Limiter>(config_.max_in_flight);
}

HttpChatModel::~HttpChatModel() = default;

std::string HttpChatModel::Complete(const ChatRequest& request) {
  ChatRequest req = request;
  if (req.model.empty()) req.model = config_.model;
  const std::string body = BuildChatBody(req);
  std::map<std::string, std::string> headers = {{"Content-Type", "application/json"}};
  if (!config_.api_key.empty()) headers["Authorization"] = "Bearer " + config_.api_key;

  limiter_->slots.acquire();
  struct Release {
    Limiter* l;
    ~Release() { l->slots.release(); }
  } release{limiter_.get()};

  ErrorCode last_code = ErrorCode::kTimeout;
  std::string last_message;
  for (int attempt = 0; attempt < config_.max_attempts; ++attempt) {
    if (attempt > 0) sleeper_(config_.initial_backoff * (1 << (attempt - 1)));
    HttpResponse response;
    try {
      response = transport_->Post(kChatPath, body, headers);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTimeout) throw;
      last_code = ErrorCode::kTimeout;
      last_message = e.what();
      continue;
    }
    if (response.status >= 200 && response.status < 300) {
      return ParseChatReply(response.body);
    }
    if (response.status == 401 || response.status == 403) {
      Fail(ErrorCode::kAuthError,
           fmt::format("endpoint rejected credentials (HTTP {})", response.status));
    }
    if (response.status == 429) {
      last_code = ErrorCode::kRateLimited;
    } else if (response.status >= 500 || response.status == 408) {
      last_code = ErrorCode::kTimeout;
    } else {
      Fail(ErrorCode::kMalformedResponse,
           fmt::format("unexpected HTTP {}: {}", response.status, response.body.substr(0, 200)));
    }
    last_message = fmt::format("HTTP {}", response.status);
  }
  Fail(last_code, fmt::format("giving up after {} attempts: {}", config_.max_attempts,
                              last_message));
}

MockOracleModel::MockOracleModel(std::span<const QaRecord> records) {
  for (const QaRecord& r : records) answers_[r.id] = r.answer;
}

std::string MockOracleModel::Complete(const ChatRequest& request) {
  auto it = answers_.find(request.record_id);
  if (it == answers_.end()) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("oracle model has no record '{}'", request.record_id));
  }
  return it->second;
}

MockRandomModel::MockRandomModel(std::span<const QaRecord> records, std::uint64_t seed,
                                 int image_width, int image_height)
    : seed_(seed), width_(image_width), height_(image_height) {
  for (const QaRecord& r : records) {
    shapes_[r.id] = {r.answer_format, static_cast<int>(r.choices.size())};
  }
}

std::string MockRandomModel::Complete(const ChatRequest& request) {
  auto it = shapes_.find(request.record_id);
  if (it == shapes_.end()) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("random model has no record '{}'", request.record_id));
  }
  Rng rng(DeriveSeed(seed_, request.record_id, "mock_random"));
  const Shape& shape = it->second;
  switch (shape.format) {
    case AnswerFormat::kChoice: {
      const int k = std::max(shape.options, 1);
      return SerializeAnswer(Choice{OptionLetter(rng.UniformInt(0, k - 1))},
                             AnswerFormat::kChoice);
    }
    case AnswerFormat::kBoxes: {
      Box b{rng.UniformInt(0, width_ - 1), rng.UniformInt(0, height_ - 1),
            rng.UniformInt(0, width_ - 1), rng.UniformInt(0, height_ - 1)};
      return SerializeAnswer(std::vector<Box>{b.Normalized()}, AnswerFormat::kBoxes);
    }
    case AnswerFormat::kPoints: {
      std::vector<Point2> points;
      for (int i = 0; i < 5; ++i) {
        points.push_back({static_cast<double>(rng.UniformInt(0, width_ - 1)),
                          static_cast<double>(rng.UniformInt(0, height_ - 1))});
      }
      return SerializeAnswer(points, AnswerFormat::kPoints);
    }
    case AnswerFormat::kOpen:
      break;
  }
  return "I cannot tell from this image.";
}

MockContextModel::MockContextModel(std::span<const QaRecord> records) {
  for (const QaRecord& r : records) entries_[r.id] = {r.task, r.context};
}

namespace {

std::string JoinNames(const json& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += i + 1 == names.size() ? " and " : ", ";
    out += names[i].get<std::string>();
  }
  return out.empty() ? "open ground" : out;
}

std::string DescribeLayout(const json& layout) {
  std::string out;
  for (const json& item : layout) {
    const int n = item.value("instances", 0);
    std::string where;
    for (const json& r : item.value("regions", json::array())) {
      where += (where.empty() ? "" : ", ") + r.get<std::string>();
    }
    out += fmt::format(" {} {} appear{} in the {} of the frame.", n,
                       item.value("class", "object"), n == 1 ? "s" : "", where);
  }
  return out;
}

std::string WriteLanding(const json& ctx) {
  const json airspace = ctx.value("airspace", json::array());
  const json hazards = ctx.value("hazards", json::array());
  bool high_risk = false;
  json hazard_names = json::array();
  for (const json& h : hazards) {
    hazard_names.push_back(h.value("class", "object"));
    high_risk = high_risk || h.value("risk", "") == "high";
  }
  std::string feasibility = "unsafe";
  std::string region = "none";
  double confidence = 0.8;
  if (!airspace.empty()) {
    feasibility = high_risk ? "cautious" : "safe";
    const json& best = airspace.front();
    region = fmt::format("open area of {} px around ({}, {})", best.value("area", 0),
                         best["centroid"][0].get<double>(), best["centroid"][1].get<double>());
    confidence = high_risk ? 0.6 : 0.9;
  }
  return json{{"feasibility", feasibility},
              {"confidence", confidence},
              {"region", region},
              {"hazards", hazard_names},
              {"reasoning", fmt::format("{} open regions and {} hazards were identified.",
                                        airspace.size(), hazards.size())}}
      .dump();
}

}  // namespace

std::string MockContextModel::Complete(const ChatRequest& request) {
  auto it = entries_.find(request.record_id);
  if (it == entries_.end()) {
    Fail(ErrorCode::kInvalidArgument,
         fmt::format("context model has no record '{}'", request.record_id));
  }
  const json& ctx = it->second.context;
  switch (it->second.task) {
    case Task::kCaptionSingle:
      return "Overhead view showing " + JoinNames(ctx.value("classes", json::array())) +
             "." + DescribeLayout(ctx.value("layout", json::array()));
    case Task::kCaptionMulti: {
      std::string text = "Across the sequence the UAV observes " +
                         JoinNames(ctx.value("classes", json::array())) + ".";
      for (const json& f : ctx.value("frames", json::array())) {
        text += fmt::format(" Frame {} shows {}.", f.value("frame_id", "?"),
                            JoinNames(f.value("classes", json::array())));
      }
      return text;
    }
    case Task::kLanding:
      return WriteLanding(ctx);
    default:
      return {};
  }
}

ModelJudge::ModelJudge(ChatModel& model, std::string model_name)
    : model_(model), model_name_(std::move(model_name)) {}

int ModelJudge::Score(std::string_view question, std::string_view reference,
                      std::string_view candidate) {
  ChatRequest req;
  req.model = model_name_;
  req.system = "You are a strict grader.";
  req.user = JudgePrompt(question, reference, candidate);
  req.max_tokens = 16;
  std::string reply;
  try {
    reply = model_.Complete(req);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kAuthError:
      case ErrorCode::kRateLimited:
      case ErrorCode::kTimeout:
      case ErrorCode::kMalformedResponse:
        Fail(ErrorCode::kJudgeUnavailable, e.what());
      default:
        throw;
    }
  }
  return ParseJudgeReply(reply);
}

int ParseJudgeReply(std::string_view reply) {
  static const std::regex kInteger(R"(\d+)");
  const std::string text(reply);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kInteger);
       it != std::sregex_iterator(); ++it) {
    const std::string digits = it->str();
    if (digits.size() > 2) continue;
    const int v = std::stoi(digits);
    if (v >= 1 && v <= 10) return v;
  }
  Fail(ErrorCode::kUnparseableJudgeReply,
       fmt::format("no score in judge reply '{}'", text.substr(0, 80)));
}

}  // namespace skyforge
