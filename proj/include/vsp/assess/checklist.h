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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vsp/llm/chat.h"

namespace vsp::assess {

// Aspects are behaviours of the student; information items are facts the
// patient must state.
enum class ItemKind { kAspect, kInformation };

std::string_view to_string(ItemKind kind);
std::optional<ItemKind> parse_item_kind(std::string_view text);

struct ChecklistItem {
  std::string id;
  ItemKind kind = ItemKind::kAspect;
  std::string description;
  std::string judge_guidance;
  // Information items only.
  std::string canonical_value;
  std::vector<std::string> paraphrase_hints;
  // Aspect items: phrases whose presence in a doctor turn counts as the
  // behaviour. Used by the containment judge; LLM judges see them as hints.
  std::vector<std::string> keywords;
};

struct Weights {
  double aspect = 0.3;
  double info = 0.7;
};

struct ScoringProgram {
  std::vector<ChecklistItem> items;
  Weights weights;

  std::size_t count(ItemKind kind) const;
};

class EmptyChecklistError : public std::runtime_error {
 public:
  EmptyChecklistError() : std::runtime_error("checklist has no items") {}
};

class ChecklistFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument: weights negative or not summing to 1 (1e-9),
// no items, duplicate or empty ids, empty descriptions, an information
// item without canonical value.
void validate(const ScoringProgram& program);

struct RawChecklistRow {
  std::string text;
  std::optional<ItemKind> category;
  std::optional<std::string> id;
  std::optional<std::string> canonical_value;
  std::optional<double> points;
  std::vector<std::string> paraphrase_hints;
  std::vector<std::string> keywords;
  std::string guidance;
};

struct RawChecklist {
  std::vector<RawChecklistRow> rows;
  Weights weights;
};

// Accepts a JSON list of rows or {"items": [...], "weights": {...}}.
RawChecklist parse_raw_checklist(const nlohmann::json& value);
RawChecklist read_raw_checklist(const std::string& path);

// The classifier request for one untagged row; its reply must be a JSON
// object {"category", "canonical_value"?, "guidance"?}.
llm::ChatRequest build_classify_request(const RawChecklistRow& row);

// Pre-tagged rows bypass the backend. Backend may be null when every row is
// tagged. Throws EmptyChecklistError, llm::BackendError, ChecklistFormatError.
ScoringProgram compile_checklist(const RawChecklist& raw,
                                 const llm::ChatBackend* backend);

nlohmann::json to_json(const ScoringProgram& program);
ScoringProgram program_from_json(const nlohmann::json& value);

}  // namespace vsp::assess
