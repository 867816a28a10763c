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

#include <atomic>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsp/llm/chat.h"

// Table-driven backend for tests and offline runs.
//
// Fixture: either a JSON list of rules or {"rules": [...], "default": "..."}.
// A rule is {"match": str, "is_regex": bool, "response": str,
// "scope": "last_user" | "conversation"}. Substring rules match
// case-insensitively (ASCII); regex rules use ECMAScript syntax, also
// case-insensitive, and may reference groups as $1..$9 in the response.
// The first matching rule wins.
namespace vsp::llm {

struct ScriptRule {
  enum class Scope { kLastUser, kConversation };

  std::string match;
  bool is_regex = false;
  std::string response;
  Scope scope = Scope::kLastUser;
};

class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<ScriptRule> rules,
                           std::optional<std::string> default_response = {});

  static ScriptedBackend from_json(const nlohmann::json& fixture);
  static ScriptedBackend from_file(const std::string& path);

  // Throws MalformedResponseError when nothing matches and there is no
  // default; the message carries the unmatched text.
  std::string complete(const ChatRequest& request) const override;

  std::size_t calls() const { return calls_.load(); }

  ScriptedBackend(const ScriptedBackend& other);

 private:
  struct Compiled {
    ScriptRule rule;
    std::optional<std::regex> pattern;
  };

  std::vector<Compiled> rules_;
  std::optional<std::string> default_response_;
  mutable std::atomic<std::size_t> calls_{0};
};

}  // namespace vsp::llm
