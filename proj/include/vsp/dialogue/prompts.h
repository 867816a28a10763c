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

#include <map>
#include <string>
#include <string_view>

#include "json.hpp"
#include "vsp/ingest/case_script.h"

// Prompt text is configuration. Each template is rendered by replacing
// {name} placeholders; unknown placeholders are left as written. Every
// request kind starts its user message with a marker ([QUERY], [RESPOND],
// [FABRICATE]) so scripted backends can route on it.
namespace vsp::dialogue {

struct PromptTemplates {
  // {profile} expands to one "key: value" line per profile field.
  std::string role_card;
  // {mentions} {question} {predicates}
  std::string query_system;
  std::string query_user;
  // {evidence} {question}
  std::string respond_user;
  // Prepended to respond_user when a reply is regenerated.
  std::string reminder;
  // {subject} {predicate} {evidence}
  std::string fabricate_user;
  std::string fallback_reply;
};

PromptTemplates default_templates();
// Keys missing from `value` keep the defaults.
PromptTemplates templates_from_json(const nlohmann::json& value);

std::string render(std::string_view tmpl,
                   const std::map<std::string, std::string>& vars);

std::string build_role_card(const ingest::CaseScript& script,
                            const PromptTemplates& templates);

}  // namespace vsp::dialogue
