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

#include "vsp/assess/indicators.h"

#include <stdexcept>

#include "vsp/common/text.h"

namespace vsp::assess {

Indicators compute_indicators(const Transcript& transcript, const graph::EntityIndex& index,
                              const SentimentScorer& scorer) {
  if (transcript.empty()) throw std::invalid_argument("cannot describe an empty transcript");
  Indicators out;
  std::size_t tokens = 0;
  std::size_t mentions = 0;
  std::size_t chars = 0;
  double polarity = 0.0;
  for (const auto& turn : transcript) {
    if (turn.speaker != Speaker::kStudent) continue;
    ++out.turn_number;
    tokens += text::tokenize(turn.text).size();
    mentions += index.scan(turn.text).size();
    chars += text::code_point_count(turn.text);
    polarity += scorer.score(turn.text);
  }
  if (out.turn_number == 0) return out;
  const double turns = out.turn_number;
  out.info_density = tokens == 0 ? 0.0 : static_cast<double>(mentions) / tokens;
  out.emotional_tendency = polarity / turns;
  out.response_length = chars / turns;
  out.response_tokens = tokens / turns;
  return out;
}

nlohmann::json to_json(const Indicators& i) {
  return {{"info_density", i.info_density},
          {"emotional_tendency", i.emotional_tendency},
          {"response_length", i.response_length},
          {"response_tokens", i.response_tokens},
          {"turn_number", i.turn_number}};
}

}  // namespace vsp::assess
