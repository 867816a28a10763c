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

#include "vsp/llm/openai_backend.h"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "httplib.h"

namespace vsp::llm {
namespace {

using Clock = std::chrono::steady_clock;
using std::chrono::milliseconds;

bool retriable(const BackendError& e) {
  return dynamic_cast<const TimeoutError*>(&e) != nullptr ||
         dynamic_cast<const RateLimitError*>(&e) != nullptr ||
         dynamic_cast<const TransportError*>(&e) != nullptr ||
         dynamic_cast<const MalformedResponseError*>(&e) != nullptr;
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw TransportError("endpoint '" + url + "' has no scheme");
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024>& s) : s_(s) {}
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<1024>& s_;
};

}  // namespace

HttpResponse HttplibTransport::post(const std::string& url,
                                    const std::string& body,
                                    const HttpHeaders& headers,
                                    milliseconds timeout) const {
  const SplitUrl parts = split_url(url);
  httplib::Client client(parts.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers h;
  for (const auto& [k, v] : headers) {
    if (k != "Content-Type") h.emplace(k, v);
  }
  const auto started = Clock::now();
  auto result = client.Post(parts.path, h, body, "application/json");
  if (!result) {
    const httplib::Error err = result.error();
    if (err == httplib::Error::ConnectionTimeout ||
        Clock::now() - started >= timeout) {
      throw TimeoutError("request to " + url + " timed out");
    }
    throw TransportError("request to " + url + " failed: " +
                         httplib::to_string(err));
  }
  return {result->status, result->body};
}

milliseconds RetryPolicy::max_total_backoff() const {
  double total = 0;
  double delay = static_cast<double>(base_delay.count());
  for (int i = 0; i < max_retries; ++i) {
    total += delay * (1.0 + jitter);
    delay *= multiplier;
  }
  return milliseconds(static_cast<long long>(std::ceil(total)));
}

OpenAiChatBackend::OpenAiChatBackend(OpenAiOptions options,
                                     std::shared_ptr<const HttpTransport> transport,
                                     Sleeper sleeper, EnvLookup env)
    : options_(std::move(options)),
      transport_(std::move(transport)),
      sleeper_(std::move(sleeper)),
      env_(std::move(env)),
      slots_(std::max(1, options_.max_concurrency)),
      rng_(options_.jitter_seed) {
  if (!sleeper_) {
    sleeper_ = [](milliseconds d) { std::this_thread::sleep_for(d); };
  }
  if (!env_) {
    env_ = [](const std::string& name) -> std::optional<std::string> {
      const char* v = std::getenv(name.c_str());
      if (v == nullptr || *v == '\0') return std::nullopt;
      return std::string(v);
    };
  }
  if (options_.max_concurrency > 1024) {
    throw std::invalid_argument("max_concurrency above 1024");
  }
}

std::string OpenAiChatBackend::request_body(const std::string& model,
                                            const ChatRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const ChatMessage& m : request.messages) messages.push_back(to_json(m));
  nlohmann::json body = {{"model", model},
                         {"messages", std::move(messages)},
                         {"temperature", request.temperature},
                         {"max_tokens", request.max_tokens}};
  if (request.seed) body["seed"] = *request.seed;
  return body.dump();
}

std::string OpenAiChatBackend::parse_response(const std::string& body) {
  const nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw MalformedResponseError("response body is not a JSON object");
  }
  const auto choices = doc.find("choices");
  if (choices == doc.end() || !choices->is_array() || choices->empty()) {
    throw MalformedResponseError("response has no choices");
  }
  const nlohmann::json& first = (*choices)[0];
  if (!first.is_object() || !first.contains("message") ||
      !first["message"].is_object() || !first["message"].contains("content") ||
      !first["message"]["content"].is_string()) {
    throw MalformedResponseError("response choice has no message content");
  }
  return first["message"]["content"].get<std::string>();
}

std::string OpenAiChatBackend::attempt(const std::string& body,
                                       const HttpHeaders& headers,
                                       milliseconds timeout) const {
  const HttpResponse resp =
      transport_->post(options_.endpoint, body, headers, timeout);
  if (resp.status >= 200 && resp.status < 300) return parse_response(resp.body);
  const std::string what = "backend answered " + std::to_string(resp.status);
  if (resp.status == 401 || resp.status == 403) throw AuthError(what);
  if (resp.status == 429) throw RateLimitError(what);
  if (resp.status >= 500) throw TransportError(what);
  if (resp.status == 408) throw TimeoutError(what);
  throw BackendError(what + ": " + resp.body.substr(0, 200));
}

milliseconds OpenAiChatBackend::backoff(int retry) const {
  const RetryPolicy& p = options_.retry;
  double delay = static_cast<double>(p.base_delay.count()) *
                 std::pow(p.multiplier, retry);
  double u;
  {
    std::lock_guard lock(rng_mu_);
    u = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
  }
  delay *= 1.0 + p.jitter * u;
  return milliseconds(static_cast<long long>(std::llround(delay)));
}

std::string OpenAiChatBackend::complete(const ChatRequest& request) const {
  validate(request);
  HttpHeaders headers = {{"Content-Type", "application/json"}};
  if (!options_.auth_env.empty()) {
    const auto key = env_(options_.auth_env);
    if (!key) throw AuthError("environment variable " + options_.auth_env +
                              " is not set");
    headers.emplace("Authorization", "Bearer " + *key);
  }
  const std::string body = request_body(options_.model, request);

  const int retries = std::max(0, options_.retry.max_retries);
  const auto deadline = Clock::now() + options_.timeout * (retries + 1) +
                        options_.retry.max_total_backoff();
  if (!slots_.try_acquire_until(deadline)) {
    throw TimeoutError("no free backend slot before the deadline");
  }
  SlotGuard guard(slots_);

  std::exception_ptr last;
  for (int i = 0; i <= retries; ++i) {
    const auto left =
        std::chrono::duration_cast<milliseconds>(deadline - Clock::now());
    if (left <= milliseconds(0)) break;
    try {
      return attempt(body, headers, std::min(options_.timeout, left));
    } catch (const BackendError& e) {
      if (!retriable(e)) throw;
      last = std::current_exception();
    }
    if (i == retries) break;
    const auto remaining =
        std::chrono::duration_cast<milliseconds>(deadline - Clock::now());
    sleeper_(std::clamp(backoff(i), milliseconds(0), remaining));
  }
  if (last) std::rethrow_exception(last);
  throw TimeoutError("deadline passed before the request could be sent");
}

}  // namespace vsp::llm
