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

#include "vsp/llm/scripted_backend.h"

#include <fstream>

#include "vsp/common/text.h"

namespace vsp::llm {
namespace {

std::string conversation_text(const ChatRequest& request) {
  std::string out;
  for (const ChatMessage& m : request.messages) {
    if (!out.empty()) out.push_back('\n');
    out += m.content;
  }
  return out;
}

ScriptRule rule_from_json(const nlohmann::json& value) {
  if (!value.is_object()) {
    throw std::invalid_argument("scripted rule must be an object");
  }
  ScriptRule rule;
  rule.match = value.at("match").get<std::string>();
  rule.is_regex = value.value("is_regex", false);
  rule.response = value.at("response").get<std::string>();
  const std::string scope = value.value("scope", std::string("last_user"));
  if (scope == "last_user") {
    rule.scope = ScriptRule::Scope::kLastUser;
  } else if (scope == "conversation") {
    rule.scope = ScriptRule::Scope::kConversation;
  } else {
    throw std::invalid_argument("unknown rule scope '" + scope + "'");
  }
  return rule;
}

}  // namespace

ScriptedBackend::ScriptedBackend(std::vector<ScriptRule> rules,
                                 std::optional<std::string> default_response)
    : default_response_(std::move(default_response)) {
  rules_.reserve(rules.size());
  for (ScriptRule& rule : rules) {
    Compiled c{std::move(rule), std::nullopt};
    if (c.rule.is_regex) {
      try {
        c.pattern.emplace(c.rule.match,
                          std::regex::ECMAScript | std::regex::icase);
      } catch (const std::regex_error& e) {
        throw std::invalid_argument("bad rule pattern '" + c.rule.match +
                                    "': " + e.what());
      }
    }
    rules_.push_back(std::move(c));
  }
}

ScriptedBackend::ScriptedBackend(const ScriptedBackend& other)
    : rules_(other.rules_), default_response_(other.default_response_) {}

ScriptedBackend ScriptedBackend::from_json(const nlohmann::json& fixture) {
  std::vector<ScriptRule> rules;
  std::optional<std::string> fallback;
  const nlohmann::json* list = &fixture;
  if (fixture.is_object()) {
    list = &fixture.at("rules");
    if (auto it = fixture.find("default"); it != fixture.end() && !it->is_null()) {
      fallback = it->get<std::string>();
    }
  }
  if (!list->is_array()) {
    throw std::invalid_argument("scripted fixture must hold a list of rules");
  }
  for (const auto& item : *list) rules.push_back(rule_from_json(item));
  return ScriptedBackend(std::move(rules), std::move(fallback));
}

ScriptedBackend ScriptedBackend::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scripted fixture " + path);
  return from_json(nlohmann::json::parse(in));
}

std::string ScriptedBackend::complete(const ChatRequest& request) const {
  ++calls_;
  const std::string last = last_user_content(request);
  std::string whole;
  bool whole_ready = false;
  for (const Compiled& c : rules_) {
    const std::string* subject = &last;
    if (c.rule.scope == ScriptRule::Scope::kConversation) {
      if (!whole_ready) {
        whole = conversation_text(request);
        whole_ready = true;
      }
      subject = &whole;
    }
    if (c.pattern) {
      std::smatch m;
      if (std::regex_search(*subject, m, *c.pattern)) {
        return m.format(c.rule.response);
      }
    } else if (text::find_icase(*subject, c.rule.match) != std::string::npos) {
      return c.rule.response;
    }
  }
  if (default_response_) return *default_response_;
  throw MalformedResponseError("no scripted rule matches: " + last);
}

}  // namespace vsp::llm
