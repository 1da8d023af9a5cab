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

#include <memory>

#include "fmt/format.h"
#include "httplib.h"
#include "skyforge/error.hpp"
#include "skyforge/model_client.hpp"

namespace skyforge {
namespace {

class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(const EndpointConfig& config) {
    // Split "scheme://host:port/prefix" so the prefix can be prepended.
    std::string url = config.base_url;
    while (!url.empty() && url.back() == '/') url.pop_back();
    const std::size_t scheme_end = url.find("://");
    const std::size_t path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    std::string origin = url;
    if (path_start != std::string::npos) {
      origin = url.substr(0, path_start);
      prefix_ = url.substr(path_start);
    }
    // A prefix that already names the API version replaces ours.
    if (prefix_.ends_with("/v1")) prefix_.resize(prefix_.size() - 3);
    client_ = std::make_unique<httplib::Client>(origin);
    if (!client_->is_valid()) {
      Fail(ErrorCode::kInvalidArgument,
           fmt::format("unsupported endpoint '{}'", config.base_url));
    }
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(config.timeout_seconds));
    client_->set_connection_timeout(timeout);
    client_->set_read_timeout(timeout);
    client_->set_write_timeout(timeout);
  }

  HttpResponse Post(const std::string& path, const std::string& body,
                    const std::map<std::string, std::string>& headers) override {
    httplib::Headers h;
    std::string content_type = "application/json";
    for (const auto& [k, v] : headers) {
      if (k == "Content-Type") {
        content_type = v;
      } else {
        h.emplace(k, v);
      }
    }
    auto result = client_->Post(prefix_ + path, h, body, content_type);
    if (!result) {
      Fail(ErrorCode::kTimeout,
           fmt::format("request failed: {}", httplib::to_string(result.error())));
    }
    return {result->status, result->body};
  }

 private:
  std::unique_ptr<httplib::Client> client_;
  std::string prefix_;
};

}  // namespace

std::unique_ptr<HttpTransport> MakeHttpTransport(const EndpointConfig& config) {
  if (config.base_url.empty()) Fail(ErrorCode::kInvalidArgument, "endpoint URL is empty");
  return std::make_unique<HttplibTransport>(config);
}

}  // namespace skyforge
