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

#include <cstdint>
#include <memory>
#include <string>

#include "vsp/dialogue/engine.h"
#include "vsp/ingest/graph_builder.h"
#include "vsp/ingest/lexicon.h"
#include "vsp/ingest/rule_extractor.h"
#include "vsp/llm/scripted_backend.h"

namespace vsp::testing {

inline std::string data_path(const std::string& rel) {
  return std::string(VSP_TEST_DATA_DIR) + "/" + rel;
}

inline std::shared_ptr<const dialogue::CaseEntry> sample_entry() {
  auto script = ingest::read_case_script_file(data_path("cases/sample_cough.json"));
  ingest::RuleBasedExtractor extractor(
      ingest::Lexicon::from_file(data_path("lexicon.tsv")));
  auto graph = ingest::ingest_case(script, extractor);
  return std::make_shared<dialogue::CaseEntry>(std::move(script), std::move(graph));
}

inline std::shared_ptr<llm::ScriptedBackend> sample_patient() {
  return std::make_shared<llm::ScriptedBackend>(
      llm::ScriptedBackend::from_file(data_path("fixtures/patient_sample_cough.json")));
}

// Deterministic clock: 1000 ms steps from a fixed epoch.
inline dialogue::SessionEngine::Clock step_clock(std::int64_t start = 1767225600000) {
  auto now = std::make_shared<std::int64_t>(start);
  return [now] { return (*now) += 1000; };
}

inline const char* const kSampleQuestions[] = {
    "Hello, what brings you in today?",
    "How long have you had the cough?",
    "Have you measured your temperature?",
    "Do you take any medication regularly?",
    "Do you have any chronic illness?",
    "Do you smoke?",
};

}  // namespace vsp::testing
