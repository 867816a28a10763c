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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsp/common/transcript.h"
#include "vsp/dialogue/engine.h"
#include "vsp/eval/records.h"
#include "vsp/llm/chat.h"

namespace vsp::eval {

// Which presentation slot the judge preferred.
enum class Slot { kFirst, kSecond, kTie };

// "1" / "2" / "tie" (also A / B, case-insensitive, punctuation ignored),
// optionally after a leading "Conversation" or "Answer".
std::optional<Slot> parse_slot(std::string_view reply);

llm::ChatRequest build_pairwise_request(const Transcript& first, const Transcript& second,
                                        const std::string& case_text, double temperature = 0.0);

// Asks twice with the presentation order swapped. Agreement yields that
// winner; anything else is a tie. Throws llm::BackendError, including
// MalformedResponseError for an unreadable reply.
Outcome pairwise_judge(const Transcript& a, const Transcript& b, const llm::ChatBackend& judge,
                       const std::string& case_text = "");

// Case script rendered for the judge prompt.
std::string case_summary(const ingest::CaseScript& script);

struct ArenaConfig {
  std::vector<std::string> case_ids;
  std::vector<std::string> players;  // patient backend ids
  std::vector<std::string> questions;  // the doctor's script, same for every player
  std::string judge_id;
  bool include_case = true;
  std::size_t workers = 4;
};

struct ArenaResult {
  std::vector<ComparisonRecord> records;  // case order, then player pair order
  // transcripts[case_id][player]
  std::map<std::string, std::map<std::string, Transcript>> transcripts;
  std::vector<std::string> failures;
};

// Plays every player through the question script on each case, then judges
// every unordered player pair. Failed sessions or judgements are recorded
// and skipped.
ArenaResult run_arena(const ArenaConfig& config, dialogue::SessionEngine& engine,
                      const llm::BackendRegistry& registry);

}  // namespace vsp::eval
