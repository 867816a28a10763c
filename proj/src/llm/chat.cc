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

#include "vsp/llm/chat.h"

namespace vsp::llm {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "system") return Role::kSystem;
  if (text == "user") return Role::kUser;
  if (text == "assistant") return Role::kAssistant;
  return std::nullopt;
}

void validate(const ChatRequest& request) {
  if (request.messages.empty()) {
    throw std::invalid_argument("chat request has no messages");
  }
  for (std::size_t i = 0; i < request.messages.size(); ++i) {
    const ChatMessage& m = request.messages[i];
    if (m.role == Role::kSystem && i != 0) {
      throw std::invalid_argument("system message must be first and unique");
    }
    if (m.role != Role::kSystem && m.content.empty()) {
      throw std::invalid_argument("empty " + std::string(to_string(m.role)) +
                                  " message");
    }
  }
  if (request.temperature < 0) {
    throw std::invalid_argument("temperature must be >= 0");
  }
  if (request.max_tokens < 1) {
    throw std::invalid_argument("max_tokens must be positive");
  }
}

std::string last_user_content(const ChatRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == Role::kUser) return it->content;
  }
  return {};
}

nlohmann::json to_json(const ChatMessage& message) {
  return {{"role", to_string(message.role)}, {"content", message.content}};
}

SamplingDefaults sampling_from_json(const nlohmann::json& value) {
  SamplingDefaults out;
  if (!value.is_object()) return out;
  out.dialogue_temperature =
      value.value("dialogue_temperature", out.dialogue_temperature);
  out.judge_temperature = value.value("judge_temperature", out.judge_temperature);
  out.extraction_temperature =
      value.value("extraction_temperature", out.extraction_temperature);
  out.max_tokens = value.value("max_tokens", out.max_tokens);
  return out;
}

}  // namespace vsp::llm
