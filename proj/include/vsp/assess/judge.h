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

#include <optional>
#include <string>
#include <string_view>

#include "vsp/assess/checklist.h"
#include "vsp/common/transcript.h"
#include "vsp/llm/chat.h"

namespace vsp::assess {

enum class Decision { kAchieved, kNotAchieved, kAbstain };

std::string_view to_string(Decision decision);
std::optional<Decision> parse_decision_name(std::string_view text);

struct JudgeVerdict {
  std::string item_id;
  std::string judge_id;
  Decision decision = Decision::kAbstain;
  std::string detail;  // raw reply, or the error text on abstain

  friend bool operator==(const JudgeVerdict&, const JudgeVerdict&) = default;
};

// Section headers of the judge prompt. The containment judge parses them.
inline constexpr std::string_view kJudgeMarker = "[JUDGE]";
inline constexpr std::string_view kTranscriptHeader = "Transcript:";
inline constexpr std::string_view kPatientOnlyHeader = "Patient statements:";
inline constexpr std::string_view kExpectedValuePrefix = "Expected value: ";
inline constexpr std::string_view kParaphrasePrefix = "Accepted paraphrases: ";
inline constexpr std::string_view kKeywordsPrefix = "Keywords: ";
inline constexpr std::string_view kKindPrefix = "Item kind: ";

// Information items see patient turns only, so a doctor who merely lists
// values cannot earn them.
llm::ChatRequest build_judge_request(const Transcript& transcript,
                                     const ChecklistItem& item,
                                     double temperature = 0.0);

// YES / ACHIEVED / TRUE / 是 → achieved; NO / NOT ACHIEVED / FALSE / 否 →
// not achieved (case-insensitive, surrounding punctuation ignored);
// anything else is nullopt.
std::optional<Decision> parse_judge_reply(std::string_view reply);

// Never throws for backend or parse failures: they become abstain.
// Throws std::invalid_argument for an empty transcript.
JudgeVerdict judge_item(const Transcript& transcript, const ChecklistItem& item,
                        const std::string& judge_id, const llm::ChatBackend& judge,
                        double temperature = 0.0);

}  // namespace vsp::assess
