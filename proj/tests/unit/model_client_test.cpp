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

#include <gtest/gtest.h>

#include <atomic>
#include <deque>
#include <mutex>
#include <thread>

#include "skyforge/answer.hpp"
#include "skyforge/error.hpp"
#include "skyforge/model_client.hpp"

namespace skyforge {
namespace {

using nlohmann::json;
using std::chrono::milliseconds;

std::string ReplyBody(const std::string& content) {
  return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}.dump();
}

// Replays scripted responses and counts calls.
class FakeTransport : public HttpTransport {
 public:
  struct Shared {
    std::mutex mu;
    std::deque<HttpResponse> script;  // empty script: throw Timeout
    int calls = 0;
    std::string last_body;
    std::map<std::string, std::string> last_headers;
  };
  explicit FakeTransport(std::shared_ptr<Shared> s) : s_(std::move(s)) {}
  HttpResponse Post(const std::string& path, const std::string& body,
                    const std::map<std::string, std::string>& headers) override {
    std::lock_guard lock(s_->mu);
    EXPECT_EQ(path, kChatPath);
    ++s_->calls;
    s_->last_body = body;
    s_->last_headers = headers;
    if (s_->script.empty()) Fail(ErrorCode::kTimeout, "connection refused");
    HttpResponse r = s_->script.front();
    s_->script.pop_front();
    return r;
  }

 private:
  std::shared_ptr<Shared> s_;
};

struct Harness {
  std::shared_ptr<FakeTransport::Shared> shared = std::make_shared<FakeTransport::Shared>();
  std::vector<milliseconds> sleeps;
  std::unique_ptr<HttpChatModel> model;

  explicit Harness(int attempts = 3) {
    EndpointConfig cfg;
    cfg.base_url = "http://fake";
    cfg.model = "vlm";
    cfg.api_key = "secret";
    cfg.max_attempts = attempts;
    cfg.initial_backoff = milliseconds(100);
    model = std::make_unique<HttpChatModel>(cfg, std::make_unique<FakeTransport>(shared),
                                            [this](milliseconds d) { sleeps.push_back(d); });
  }
};

ChatRequest Request() {
  ChatRequest r;
  r.user = "How many cars?";
  r.system = "Be brief.";
  return r;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(HttpChatModel, SuccessSendsOpenAiBody) {
  Harness h;
  h.shared->script.push_back({200, ReplyBody("<choice>B</choice>")});
  EXPECT_EQ(h.model->Complete(Request()), "<choice>B</choice>");
  EXPECT_EQ(h.shared->calls, 1);
  EXPECT_EQ(h.shared->last_headers.at("Authorization"), "Bearer secret");
  const json body = json::parse(h.shared->last_body);
  EXPECT_EQ(body["model"], "vlm");
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"].back()["role"], "user");
}

TEST(HttpChatModel, RetriesThenSucceeds) {
  Harness h;
  h.shared->script = {{503, "busy"}, {429, "slow down"}, {200, ReplyBody("ok")}};
  EXPECT_EQ(h.model->Complete(Request()), "ok");
  EXPECT_EQ(h.shared->calls, 3);
  EXPECT_EQ(h.sleeps, (std::vector<milliseconds>{milliseconds(100), milliseconds(200)}));
}

TEST(HttpChatModel, UnreachableGivesTimeoutAfterThreeAttempts) {
  Harness h;
  EXPECT_EQ(CodeOf([&] { h.model->Complete(Request()); }), ErrorCode::kTimeout);
  EXPECT_EQ(h.shared->calls, 3);
}

TEST(HttpChatModel, NeverExceedsAttemptBudget) {
  for (int attempts = 1; attempts <= 6; ++attempts) {
    Harness h(attempts);
    for (int i = 0; i < 10; ++i) h.shared->script.push_back({429, ""});
    EXPECT_EQ(CodeOf([&] { h.model->Complete(Request()); }), ErrorCode::kRateLimited);
    EXPECT_EQ(h.shared->calls, attempts);
  }
}

TEST(HttpChatModel, AuthFailsFast) {
  Harness h;
  h.shared->script = {{401, "no"}, {200, ReplyBody("unused")}};
  EXPECT_EQ(CodeOf([&] { h.model->Complete(Request()); }), ErrorCode::kAuthError);
  EXPECT_EQ(h.shared->calls, 1);
}

TEST(HttpChatModel, BadBodiesAreMalformed) {
  Harness h;
  h.shared->script = {{200, "not json"}};
  EXPECT_EQ(CodeOf([&] { h.model->Complete(Request()); }), ErrorCode::kMalformedResponse);
  h.shared->script = {{400, "bad request"}};
  EXPECT_EQ(CodeOf([&] { h.model->Complete(Request()); }), ErrorCode::kMalformedResponse);
}

TEST(HttpChatModel, ConcurrentCallsAllComplete) {
  Harness h;
  for (int i = 0; i < 16; ++i) h.shared->script.push_back({200, ReplyBody("x")});
  std::atomic<int> ok{0};
  std::vector<std::jthread> threads;
  for (int t = 0; t < 16; ++t) {
    threads.emplace_back([&] {
      if (h.model->Complete(Request()) == "x") ++ok;
    });
  }
  threads.clear();
  EXPECT_EQ(ok.load(), 16);
}

TEST(ParseChatReply, StringAndPartContent) {
  EXPECT_EQ(ParseChatReply(ReplyBody("hi")), "hi");
  const json parts = {{"choices",
                       {{{"message",
                          {{"content", {{{"type", "text"}, {"text", "a"}},
                                        {{"type", "text"}, {"text", "b"}}}}}}}}}};
  EXPECT_EQ(ParseChatReply(parts.dump()), "ab");
  EXPECT_THROW(ParseChatReply("{\"choices\": []}"), Error);
}

TEST(BuildChatBody, IncludesImages) {
  ChatRequest r = Request();
  r.images = {"data:image/png;base64,AAAA"};
  const json body = json::parse(BuildChatBody(r));
  const json& content = body["messages"].back()["content"];
  ASSERT_TRUE(content.is_array());
  bool has_image = false;
  for (const json& part : content) has_image |= part["type"] == "image_url";
  EXPECT_TRUE(has_image);
}

TEST(Base64Encode, KnownVectors) {
  EXPECT_EQ(Base64Encode(""), "");
  EXPECT_EQ(Base64Encode("f"), "Zg==");
  EXPECT_EQ(Base64Encode("fo"), "Zm8=");
  EXPECT_EQ(Base64Encode("foobar"), "Zm9vYmFy");
}

QaRecord ChoiceRecord(std::string id, int options) {
  QaRecord r;
  r.id = std::move(id);
  r.frame_ids = {"f"};
  r.task = Task::kColor;
  r.answer_format = AnswerFormat::kChoice;
  for (int i = 0; i < options; ++i) r.choices.push_back(std::string(1, char('a' + i)));
  r.answer = "<choice>A</choice>";
  return r;
}

TEST(MockOracleModel, ReturnsReferenceAnswer) {
  QaRecord box;
  box.id = "f:box:0";
  box.answer = SerializeAnswer(std::vector<Box>{{1, 2, 3, 4}}, AnswerFormat::kBoxes);
  const std::vector<QaRecord> recs = {box};
  MockOracleModel model(recs);
  ChatRequest req = Request();
  req.record_id = "f:box:0";
  EXPECT_EQ(model.Complete(req), "<box>[[1,2,3,4]]</box>");
  req.record_id = "missing";
  EXPECT_THROW(model.Complete(req), Error);
}

TEST(MockRandomModel, UniformAndSeedDeterministic) {
  std::vector<QaRecord> recs;
  for (int i = 0; i < 4000; ++i) recs.push_back(ChoiceRecord("r" + std::to_string(i), 4));
  MockRandomModel a(recs, 5), b(recs, 5);
  std::map<char, int> counts;
  for (const QaRecord& r : recs) {
    ChatRequest req = Request();
    req.record_id = r.id;
    const std::string ans = a.Complete(req);
    EXPECT_EQ(ans, b.Complete(req));
    ++counts[std::get<Choice>(ParseAnswer(ans, AnswerFormat::kChoice, 4)).letter];
  }
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [letter, n] : counts) {
    EXPECT_NEAR(n / 4000.0, 0.25, 0.03) << letter;
  }
}

class ScriptedModel : public ChatModel {
 public:
  explicit ScriptedModel(std::function<std::string()> fn) : fn_(std::move(fn)) {}
  std::string Complete(const ChatRequest&) override { return fn_(); }

 private:
  std::function<std::string()> fn_;
};

TEST(ModelJudge, ParsesAndMapsErrors) {
  ScriptedModel good([] { return "Score: 7/10"; });
  EXPECT_EQ(ModelJudge(good, "judge").Score("q", "a", "b"), 7);
  ScriptedModel junk([] { return "excellent"; });
  EXPECT_EQ(CodeOf([&] { ModelJudge(junk, "judge").Score("q", "a", "b"); }),
            ErrorCode::kUnparseableJudgeReply);
  ScriptedModel down([]() -> std::string { Fail(ErrorCode::kTimeout, "down"); });
  EXPECT_EQ(CodeOf([&] { ModelJudge(down, "judge").Score("q", "a", "b"); }),
            ErrorCode::kJudgeUnavailable);
}

TEST(ParseJudgeReply, FirstIntegerInRange) {
  EXPECT_EQ(ParseJudgeReply("10"), 10);
  EXPECT_EQ(ParseJudgeReply("I give 0 then 4"), 4);
  EXPECT_EQ(ParseJudgeReply("Rating 123 or 9"), 9);
  EXPECT_THROW(ParseJudgeReply("none"), Error);
}

}  // namespace
}  // namespace skyforge
