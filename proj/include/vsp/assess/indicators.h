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

#include "json.hpp"
#include "vsp/assess/sentiment.h"
#include "vsp/common/transcript.h"
#include "vsp/graph/entity_linker.h"

namespace vsp::assess {

// Non-scoring descriptors of the doctor's side of a conversation.
struct Indicators {
  double info_density = 0.0;        // linked mentions per token
  double emotional_tendency = 0.5;  // mean polarity in [0, 1]
  double response_length = 0.0;     // mean code points per doctor turn
  double response_tokens = 0.0;     // mean tokens per doctor turn
  int turn_number = 0;              // doctor turns
};

// Tokens come from text::tokenize (words for spaced scripts, single
// characters for CJK). With no doctor turns every mean is 0 and the
// tendency stays neutral. Throws std::invalid_argument for an empty
// transcript.
Indicators compute_indicators(const Transcript& transcript, const graph::EntityIndex& index,
                              const SentimentScorer& scorer);

nlohmann::json to_json(const Indicators& indicators);

}  // namespace vsp::assess
