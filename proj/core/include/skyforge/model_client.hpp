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

#ifndef SKYFORGE_MODEL_CLIENT_HPP_
#define SKYFORGE_MODEL_CLIENT_HPP_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skyforge/metrics.hpp"
#include "skyforge/qa_record.hpp"

namespace skyforge {

struct ChatRequest {
  std::string model;
  std::string system;
  std::string user;
  // data: URLs ("data:image/png;base64,...") or plain base64 PNG payloads.
  std::vector<std::string> images;
  int max_tokens = 1024;
  double temperature = 0.0;
  // Not sent on the wire; lets offline models answer per record.
  std::string record_id;
};

class ChatModel {
 public:
  virtual ~ChatModel() = default;
  // Assistant text. Throws AuthError, RateLimited, Timeout or
  // MalformedResponse.
  virtual std::string Complete(const ChatRequest& request) = 0;
};

std::string Base64Encode(std::string_view bytes);
// Reads a PNG file into a data: URL.
std::string ImageDataUrl(const std::filesystem::path& png);

// OpenAI-style chat-completions body.
std::string BuildChatBody(const ChatRequest& request);
// choices[0].message.content; throws MalformedResponse.
std::string ParseChatReply(std::string_view body);

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Minimal POST interface so retry logic can be tested without a network.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // Throws Timeout when no response arrives (connection refused, DNS, read
  // timeout).
  virtual HttpResponse Post(const std::string& path, const std::string& body,
                            const std::map<std::string, std::string>& headers) = 0;
};

struct EndpointConfig {
  std::string base_url;  // scheme://host[:port][/prefix]
  std::string model;
  std::string api_key;
  double timeout_seconds = 60.0;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  int max_in_flight = 4;
};

inline constexpr const char* kApiKeyEnv = "SKYFORGE_API_KEY";
inline constexpr const char* kChatPath = "/v1/chat/completions";

// Value of SKYFORGE_API_KEY, empty when unset.
std::string ApiKeyFromEnv();

// cpp-httplib backed transport. https needs a build with OpenSSL.
std::unique_ptr<HttpTransport> MakeHttpTransport(const EndpointConfig& config);

// Chat-completions client. Retries 429, 5xx and transport failures with
// exponential backoff up to max_attempts in total; 401/403 fail at once.
// At most max_in_flight requests run concurrently across threads.
class HttpChatModel : public ChatModel {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  HttpChatModel(EndpointConfig config, std::unique_ptr<HttpTransport> transport,
                Sleeper sleeper = {});
  ~HttpChatModel() override;

  std::string Complete(const ChatRequest& request) override;

 private:
  struct Limiter;
  EndpointConfig config_;
  std::unique_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
  std::unique_ptr<Limiter> limiter_;
};

// Replies with each record's serialized ground truth.
class MockOracleModel : public ChatModel {
 public:
  explicit MockOracleModel(std::span<const QaRecord> records);
  std::string Complete(const ChatRequest& request) override;

 private:
  std::map<std::string, std::string, std::less<>> answers_;
};

// Seed-deterministic guesses: a uniform option letter for choice records,
// a random box or points inside the image for spatial records, a fixed
// non-answer for open records. Draws depend only on (seed, record id).
class MockRandomModel : public ChatModel {
 public:
  MockRandomModel(std::span<const QaRecord> records, std::uint64_t seed,
                  int image_width = 512, int image_height = 512);
  std::string Complete(const ChatRequest& request) override;

 private:
  struct Shape {
    AnswerFormat format;
    int options;
  };
  std::map<std::string, Shape, std::less<>> shapes_;
  std::uint64_t seed_;
  int width_;
  int height_;
};

// Offline writer for pending caption and landing records: composes the
// reference text deterministically from each record's generation context.
class MockContextModel : public ChatModel {
 public:
  explicit MockContextModel(std::span<const QaRecord> records);
  std::string Complete(const ChatRequest& request) override;

 private:
  struct Entry {
    Task task;
    nlohmann::json context;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

// Judge backed by a chat model. Transport errors become JudgeUnavailable;
// replies without an integer in [1, 10] throw UnparseableJudgeReply.
class ModelJudge : public Judge {
 public:
  ModelJudge(ChatModel& model, std::string model_name);
  int Score(std::string_view question, std::string_view reference,
            std::string_view candidate) override;

 private:
  ChatModel& model_;
  std::string model_name_;
};

// First integer in [1, 10] appearing in `reply`.
int ParseJudgeReply(std::string_view reply);

}  // namespace skyforge

#endif  // SKYFORGE_MODEL_CLIENT_HPP_
