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

#include "skyforge/evaluation.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "fmt/format.h"
#include "skyforge/error.hpp"
#include "skyforge/qa_generation.hpp"

namespace skyforge {
using nlohmann::json;

std::vector<Prediction> ReadPredictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingFile, fmt::format("cannot read {}", path.string()));
  std::vector<Prediction> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("record_id") ||
        !doc["record_id"].is_string() || !doc.contains("raw_text") ||
        !doc["raw_text"].is_string()) {
      Fail(ErrorCode::kMalformedFile,
           fmt::format("{}:{}: expected {{record_id, raw_text}}", path.string(), lineno));
    }
    out.push_back({doc["record_id"].get<std::string>(), doc["raw_text"].get<std::string>(),
                   doc.value("error", "")});
  }
  return out;
}

void WritePredictions(const std::filesystem::path& path,
                      std::span<const Prediction> predictions) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kMissingFile, fmt::format("cannot write {}", path.string()));
  for (const Prediction& p : predictions) {
    json doc = {{"record_id", p.record_id}, {"raw_text", p.raw_text}};
    if (!p.error.empty()) doc["error"] = p.error;
    out << doc.dump() << '\n';
  }
}

void ParallelFor(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        while (!stop.load()) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            stop = true;
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

ChatRequest RequestFor(const QaRecord& record, const std::string& prompt,
                       const EvaluationOptions& options) {
  ChatRequest req;
  req.model = options.model;
  req.system = options.system_prompt;
  req.user = prompt;
  req.record_id = record.id;
  if (options.images) {
    for (const std::string& frame : record.frame_ids) {
      for (std::string& img : options.images(frame)) req.images.push_back(std::move(img));
    }
  }
  return req;
}

bool Recoverable(ErrorCode code) {
  return code == ErrorCode::kTimeout || code == ErrorCode::kRateLimited ||
         code == ErrorCode::kMalformedResponse;
}

}  // namespace

std::vector<Prediction> CollectPredictions(std::span<const QaRecord> records,
                                           ChatModel& model,
                                           const EvaluationOptions& options) {
  std::vector<Prediction> out(records.size());
  ParallelFor(records.size(), options.concurrency, [&](std::size_t i) {
    out[i].record_id = records[i].id;
    try {
      out[i].raw_text = model.Complete(RequestFor(records[i], records[i].question, options));
    } catch (const Error& e) {
      if (!Recoverable(e.code())) throw;
      out[i].error = fmt::format("{}: {}", ErrorCodeName(e.code()), e.what());
    }
  });
  return out;
}

std::vector<Verdict> ScorePredictions(std::span<const QaRecord> records,
                                      std::span<const Prediction> predictions,
                                      Judge* judge, int concurrency) {
  std::map<std::string_view, const Prediction*> by_id;
  for (const Prediction& p : predictions) by_id[p.record_id] = &p;
  std::vector<Verdict> verdicts(records.size());
  ParallelFor(records.size(), concurrency, [&](std::size_t i) {
    const QaRecord& r = records[i];
    auto it = by_id.find(r.id);
    if (it == by_id.end() || !it->second->error.empty()) {
      Verdict& v = verdicts[i];
      v.record_id = r.id;
      v.task = r.task;
      v.unscored = true;
      v.detail = it == by_id.end() ? "no prediction" : it->second->error;
      return;
    }
    verdicts[i] = ScoreResponse(r, it->second->raw_text, judge);
  });
  return verdicts;
}

std::size_t CompletePending(std::vector<QaRecord>& records, ChatModel& model,
                            const EvaluationOptions& options) {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].pending) pending.push_back(i);
  }
  std::atomic<std::size_t> completed{0};
  ParallelFor(pending.size(), options.concurrency, [&](std::size_t k) {
    QaRecord& r = records[pending[k]];
    std::string text;
    try {
      text = model.Complete(RequestFor(r, BuildGenerationPrompt(r), options));
    } catch (const Error& e) {
      if (!Recoverable(e.code())) throw;
      return;
    }
    if (text.empty()) return;
    r.answer = text;
    r.ground_truth = {{"text", text}};
    r.pending = false;
    ++completed;
  });
  return completed.load();
}

}  // namespace skyforge
