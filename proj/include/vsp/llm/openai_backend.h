// Copyright 2026 The VSP Authors.
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

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <semaphore>
#include <string>

#include "vsp/llm/chat.h"

namespace vsp::llm {

struct HttpResponse {
  int status = 0;
  std::string body;
};

using HttpHeaders = std::multimap<std::string, std::string>;

// One POST. Throws TimeoutError when the deadline passes and TransportError
// when no response arrives for any other reason.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const std::string& url, const std::string& body,
                            const HttpHeaders& headers,
                            std::chrono::milliseconds timeout) const = 0;
};

// cpp-httplib client; https URLs use OpenSSL.
class HttplibTransport : public HttpTransport {
 public:
  HttpResponse post(const std::string& url, const std::string& body,
                    const HttpHeaders& headers,
                    std::chrono::milliseconds timeout) const override;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{500};
  double multiplier = 2.0;
  double jitter = 0.2;  // fraction of each delay, drawn uniformly +-

  // Upper bound on the sum of all backoff sleeps.
  std::chrono::milliseconds max_total_backoff() const;
};

struct OpenAiOptions {
  std::string endpoint;  // full chat-completions URL
  std::string model;
  std::string auth_env;  // empty: no Authorization header
  std::chrono::milliseconds timeout{30000};
  RetryPolicy retry;
  int max_concurrency = 4;
  std::uint64_t jitter_seed = 0x5eed;
};

// OpenAI-compatible chat completions. Retries timeouts, 429, 5xx, transport
// failures and unparseable bodies; 401/403 fail immediately with AuthError.
// A call never blocks longer than timeout * (max_retries + 1) plus the
// backoff bound, including time spent waiting for a concurrency slot.
class OpenAiChatBackend : public ChatBackend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;
  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

  explicit OpenAiChatBackend(OpenAiOptions options,
                             std::shared_ptr<const HttpTransport> transport =
                                 std::make_shared<HttplibTransport>(),
                             Sleeper sleeper = {}, EnvLookup env = {});

  std::string complete(const ChatRequest& request) const override;

  const OpenAiOptions& options() const { return options_; }

  static std::string request_body(const std::string& model,
                                  const ChatRequest& request);
  // Throws MalformedResponseError.
  static std::string parse_response(const std::string& body);

 private:
  std::string attempt(const std::string& body, const HttpHeaders& headers,
                      std::chrono::milliseconds timeout) const;
  std::chrono::milliseconds backoff(int retry) const;

  OpenAiOptions options_;
  std::shared_ptr<const HttpTransport> transport_;
  Sleeper sleeper_;
  EnvLookup env_;
  mutable std::counting_semaphore<1024> slots_;
  mutable std::mutex rng_mu_;
  mutable std::mt19937_64 rng_;
};

}  // namespace vsp::llm
