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

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsp/assess/checklist.h"
#include "vsp/assess/indicators.h"
#include "vsp/assess/vote.h"
#include "vsp/llm/registry.h"

namespace vsp::assess {

struct RosterEntry {
  std::string judge_id;
  std::shared_ptr<const llm::ChatBackend> backend;
};

using JudgeRoster = std::vector<RosterEntry>;

// Loads {"judges": [backend config, ...]} (or a bare list), adds each
// backend to `registry` and returns the roster in file order.
JudgeRoster load_roster(const nlohmann::json& value, llm::BackendRegistry& registry,
                        const std::string& base_dir);
JudgeRoster roster_from_registry(const llm::BackendRegistry& registry,
                                 const std::vector<std::string>& judge_ids);

struct ScoreBreakdown {
  double score = 0.0;
  double aspect_fraction = 0.0;  // achieved / total, 0 when there are none
  double info_fraction = 0.0;
  std::vector<std::string> flags;
};

// weight_a · aspects + weight_i · info. When one category is empty the
// other carries the whole weight and a flag is recorded.
ScoreBreakdown aggregate_score(const std::vector<ItemResult>& results,
                               const ScoringProgram& program);

struct AssessmentReport {
  double score = 0.0;
  double aspect_fraction = 0.0;
  double info_fraction = 0.0;
  std::vector<ItemResult> items;  // program order
  Indicators indicators;
  std::string transcript_ref;
  std::vector<std::string> roster;
  std::vector<std::string> flags;
};

struct AssessOptions {
  std::size_t max_parallel = 8;  // concurrent judge calls
  double judge_temperature = 0.0;
  std::string transcript_ref;
};

// Throws std::invalid_argument for an empty transcript or an even or empty
// roster, and whatever validate(program) throws.
AssessmentReport assess(const Transcript& transcript, const ScoringProgram& program,
                        const JudgeRoster& roster, const graph::EntityIndex& index,
                        const SentimentScorer& scorer, const AssessOptions& options = {});

nlohmann::json to_json(const AssessmentReport& report);

}  // namespace vsp::assess
