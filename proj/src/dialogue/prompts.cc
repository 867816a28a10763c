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

#include "vsp/dialogue/prompts.h"

#include <stdexcept>

namespace vsp::dialogue {

PromptTemplates default_templates() {
  PromptTemplates t;
  t.role_card =
      "You are a patient visiting a doctor. Stay in the patient role for the "
      "whole conversation.\n"
      "Your profile:\n{profile}\n"
      "Rules: answer only what the doctor asks, in plain everyday words. Use "
      "only the facts listed as evidence; if the evidence does not cover the "
      "question, say you are not sure. Never diagnose, never recommend "
      "treatment and never interview the doctor.";
  t.query_system =
      "Translate the doctor's question into one graph query.\n"
      "Grammar: SELECT ?var... WHERE { subject predicate object . ... } with "
      "at most four patterns. Constants are node ids or labels; variables "
      "start with '?'.\n"
      "Known predicates: {predicates}\n"
      "Reply with the query only.";
  t.query_user = "[QUERY]\nMentions: {mentions}\nQuestion: {question}";
  t.respond_user = "[RESPOND]\nEvidence:\n{evidence}\n\nDoctor: {question}";
  t.reminder =
      "Reminder: you are the patient, not the doctor. Do not give advice, "
      "do not diagnose and do not ask the doctor questions.\n";
  t.fabricate_user =
      "[FABRICATE]\nThe patient case does not record '{predicate}' for "
      "'{subject}'. Known facts:\n{evidence}\n"
      "Invent one short, plausible value consistent with these facts. Reply "
      "with the value only.";
  t.fallback_reply = "I'm not sure, doctor — what do you mean?";
  return t;
}

PromptTemplates templates_from_json(const nlohmann::json& value) {
  if (!value.is_object()) {
    throw std::invalid_argument("prompt templates must be a JSON object");
  }
  PromptTemplates t = default_templates();
  auto take = [&](const char* key, std::string& field) {
    if (!value.contains(key)) return;
    if (!value[key].is_string()) {
      throw std::invalid_argument(std::string("prompt template '") + key +
                                  "' must be a string");
    }
    field = value[key].get<std::string>();
  };
  take("role_card", t.role_card);
  take("query_system", t.query_system);
  take("query_user", t.query_user);
  take("respond_user", t.respond_user);
  take("reminder", t.reminder);
  take("fabricate_user", t.fabricate_user);
  take("fallback_reply", t.fallback_reply);
  return t;
}

std::string render(std::string_view tmpl,
                   const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      auto close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto it = vars.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != vars.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::string build_role_card(const ingest::CaseScript& script,
                            const PromptTemplates& templates) {
  std::string profile;
  for (const auto& [key, value] : script.profile) {
    if (value.empty()) continue;
    profile += "- " + key + ": " + value + "\n";
  }
  if (profile.empty()) profile = "- (no profile given)\n";
  profile.pop_back();
  return render(templates.role_card, {{"profile", profile}});
}

}  // namespace vsp::dialogue
