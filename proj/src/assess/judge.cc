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

#include "vsp/assess/judge.h"

#include <stdexcept>

#include "vsp/common/text.h"

namespace vsp::assess {
namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string speaker_line(const Turn& turn) {
  // Newlines inside a turn would break the one-line-per-turn layout.
  std::string text = text::replace_all(turn.text, "\n", " ");
  return (turn.speaker == Speaker::kStudent ? "Doctor: " : "Patient: ") + text;
}

}  // namespace

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::kAchieved: return "achieved";
    case Decision::kNotAchieved: return "not_achieved";
    case Decision::kAbstain: return "abstain";
  }
  return "abstain";
}

std::optional<Decision> parse_decision_name(std::string_view text) {
  if (text == "achieved") return Decision::kAchieved;
  if (text == "not_achieved") return Decision::kNotAchieved;
  if (text == "abstain") return Decision::kAbstain;
  return std::nullopt;
}

llm::ChatRequest build_judge_request(const Transcript& transcript, const ChecklistItem& item,
                                     double temperature) {
  const bool info = item.kind == ItemKind::kInformation;
  std::string body(kJudgeMarker);
  body += '\n';
  body += info ? kPatientOnlyHeader : kTranscriptHeader;
  body += '\n';
  for (const auto& turn : transcript) {
    if (info && turn.speaker != Speaker::kPatient) continue;
    body += speaker_line(turn) + '\n';
  }
  body += '\n';
  body += std::string(kKindPrefix) + std::string(to_string(item.kind)) + '\n';
  body += "Item: " + item.description + '\n';
  if (!item.judge_guidance.empty()) body += "Guidance: " + item.judge_guidance + '\n';
  if (info) {
    body += std::string(kExpectedValuePrefix) + item.canonical_value + '\n';
    if (!item.paraphrase_hints.empty()) {
      body += std::string(kParaphrasePrefix) + join(item.paraphrase_hints, " | ") + '\n';
    }
  } else if (!item.keywords.empty()) {
    body += std::string(kKeywordsPrefix) + join(item.keywords, " | ") + '\n';
  }
  body += info ? "Did the patient state this information? "
               : "Did the doctor do this during the conversation? ";
  body += "Answer with exactly one word: YES or NO.";

  llm::ChatRequest request;
  request.temperature = temperature;
  request.max_tokens = 8;
  request.messages.push_back(
      {llm::Role::kSystem,
       "You grade a student's clinical history-taking conversation against one "
       "checklist item. Be strict: only count what the text shows."});
  request.messages.push_back({llm::Role::kUser, std::move(body)});
  return request;
}

std::optional<Decision> parse_judge_reply(std::string_view reply) {
  std::string t = text::trim(reply);
  auto strip = [](char c) {
    return c == '.' || c == '!' || c == '*' || c == '"' || c == '\'' || c == '`';
  };
  while (!t.empty() && strip(t.front())) t.erase(0, 1);
  while (!t.empty() && strip(t.back())) t.pop_back();
  t = text::to_lower_ascii(text::trim(t));
  if (t == "yes" || t == "achieved" || t == "true" || t == "是") return Decision::kAchieved;
  if (t == "no" || t == "not achieved" || t == "not_achieved" || t == "false" || t == "否") {
    return Decision::kNotAchieved;
  }
  return std::nullopt;
}

JudgeVerdict judge_item(const Transcript& transcript, const ChecklistItem& item,
                        const std::string& judge_id, const llm::ChatBackend& judge,
                        double temperature) {
  if (transcript.empty()) throw std::invalid_argument("cannot judge an empty transcript");
  JudgeVerdict verdict{item.id, judge_id, Decision::kAbstain, ""};
  try {
    std::string reply = judge.complete(build_judge_request(transcript, item, temperature));
    verdict.detail = reply;
    if (auto d = parse_judge_reply(reply)) verdict.decision = *d;
  } catch (const std::exception& e) {
    verdict.detail = std::string("error: ") + e.what();
  }
  return verdict;
}

}  // namespace vsp::assess
