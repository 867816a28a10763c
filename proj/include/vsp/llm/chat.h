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

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vsp::llm {

enum class Role { kSystem, kUser, kAssistant };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 512;
  std::optional<std::int64_t> seed;

  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

// Throws std::invalid_argument: empty user/assistant content, a system
// message anywhere but first, temperature < 0 or max_tokens < 1.
void validate(const ChatRequest& request);

// Content of the last user message, or empty.
std::string last_user_content(const ChatRequest& request);

nlohmann::json to_json(const ChatMessage& message);

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public BackendError {
 public:
  using BackendError::BackendError;
};

class RateLimitError : public BackendError {
 public:
  using BackendError::BackendError;
};

class AuthError : public BackendError {
 public:
  using BackendError::BackendError;
};

class MalformedResponseError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Connection failures and 5xx answers.
class TransportError : public BackendError {
 public:
  using BackendError::BackendError;
};

class UnknownBackendError : public BackendError {
 public:
  explicit UnknownBackendError(const std::string& id)
      : BackendError("unknown backend '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// Implementations must allow concurrent complete() calls.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const ChatRequest& request) const = 0;
};

class FunctionBackend : public ChatBackend {
 public:
  using Fn = std::function<std::string(const ChatRequest&)>;
  explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const ChatRequest& request) const override {
    return fn_(request);
  }

 private:
  Fn fn_;
};

// Sampling parameters per call site. Loaded from config.
struct SamplingDefaults {
  double dialogue_temperature = 0.7;
  double judge_temperature = 0.0;
  double extraction_temperature = 0.0;
  int max_tokens = 512;
};

SamplingDefaults sampling_from_json(const nlohmann::json& value);

}  // namespace vsp::llm
