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
#include <vector>

#include "json.hpp"
#include "vsp/assess/assessor.h"
#include "vsp/dialogue/engine.h"

namespace vsp::eval {

std::vector<std::string> default_termination_markers();

struct VdRunConfig {
  std::string candidate;  // doctor backend id
  std::string patient;    // patient backend id
  std::vector<std::string> case_ids;
  int repeats = 5;
  int max_turns = 20;
  std::vector<std::string> termination_markers = default_termination_markers();
  std::size_t workers = 4;
};

void validate(const VdRunConfig& config);

// Doctor-side prompt: the candidate's own turns are assistant messages and
// the patient's replies are user messages.
llm::ChatRequest build_doctor_request(const Transcript& so_far, double temperature);

struct VdRun {
  std::string model;
  std::string case_id;
  int repeat = 0;
  bool ok = false;
  std::string error;
  std::string ended_by;  // "marker", "silence", "max_turns"
  double score = 0.0;
  assess::Indicators indicators;
  Transcript transcript;
};

struct VdSummary {
  std::string model;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double mean_score = 0.0;
  double score_stddev = 0.0;  // population
  assess::Indicators mean_indicators;  // turn_number left at 0, see below
  double mean_turn_number = 0.0;
};

struct VdResult {
  std::vector<VdRun> runs;  // case order, then repeat order
  VdSummary summary;
};

struct VdAssessment {
  std::map<std::string, assess::ScoringProgram> programs;  // by case id
  assess::JudgeRoster roster;
  const assess::SentimentScorer* sentiment = nullptr;
};

// Candidate plays the doctor, the session engine plays the patient. A run
// ends when the doctor's reply contains a termination marker (the reply,
// marker removed, is kept as the final doctor turn), when the doctor
// replies with nothing, or when the session budget is spent.
VdResult run_vd_eval(const VdRunConfig& config, dialogue::SessionEngine& engine,
                     const llm::BackendRegistry& registry, const VdAssessment& assessment);

nlohmann::json to_json(const VdRun& run);
nlohmann::json to_json(const VdSummary& summary);

}  // namespace vsp::eval
