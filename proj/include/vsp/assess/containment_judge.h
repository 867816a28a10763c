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

#include <string>
#include <string_view>

#include "vsp/llm/chat.h"
#include "vsp/llm/registry.h"

namespace vsp::assess {

// Deterministic judge backend that reads the structured judge prompt.
// Information items: YES when the expected value or a paraphrase occurs in
// the patient statements. Aspect items: YES when a keyword occurs in a
// doctor line; UNSURE when the item has no keywords. Matching is ASCII
// case-insensitive; Latin needles need word boundaries on both sides.
class ContainmentJudge : public llm::ChatBackend {
 public:
  std::string complete(const llm::ChatRequest& request) const override;
};

bool contains_phrase(std::string_view haystack, std::string_view needle);

// Registers kind "containment" (no further config fields).
void register_containment_kind(llm::BackendRegistry& registry);

}  // namespace vsp::assess
