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

#include "vsp/eval/vd_eval.h"

#include <cmath>
#include <stdexcept>

#include "vsp/common/parallel.h"
#include "vsp/common/text.h"

namespace vsp::eval {
namespace {

constexpr std::string_view kDoctorSystem =
    "You are a doctor taking a patient's history. Ask one question per message. "
    "When you have gathered enough information, end your message with [END].";
constexpr std::string_view kDoctorOpener =
    "[DOCTOR] The patient has just sat down. Begin the consultation.";

// Removes every marker occurrence; returns whether any was present.
bool strip_markers(std::string& reply, const std::vector<std::string>& markers) {
  bool found = false;
  for (const auto& marker : markers) {
    if (marker.empty()) continue;
    for (std::size_t at = text::find_icase(reply, marker); at != std::string::npos;
         at = text::find_icase(reply, marker)) {
      reply.erase(at, marker.size());
      found = true;
    }
  }
  return found;
}

void run_one(const VdRunConfig& config, dialogue::SessionEngine& engine,
             const llm::ChatBackend& doctor, const VdAssessment& assessment, VdRun& run) {
  auto program = assessment.programs.find(run.case_id);
  if (program == assessment.programs.end()) {
    throw std::invalid_argument("no scoring program for case '" + run.case_id + "'");
  }
  auto session = engine.start_session(run.case_id, config.patient, config.max_turns);
  const double temperature = engine.options().sampling.dialogue_temperature;
  run.ended_by = "max_turns";
  while (session->student_turns() < config.max_turns) {
    std::string reply = doctor.complete(build_doctor_request(session->transcript(), temperature));
    const bool marked = strip_markers(reply, config.termination_markers);
    reply = text::trim(reply);
    if (!reply.empty()) engine.step(*session, reply);
    if (marked) {
      run.ended_by = "marker";
      break;
    }
    if (reply.empty()) {
      run.ended_by = "silence";
      break;
    }
  }
  engine.end_session(*session);
  run.transcript = session->transcript();
  if (run.transcript.empty()) throw std::runtime_error("doctor never asked anything");
  static const assess::ConstantSentiment kNeutral(0.5);
  const assess::SentimentScorer& scorer =
      assessment.sentiment ? *assessment.sentiment : kNeutral;
  assess::AssessOptions options;
  options.judge_temperature = engine.options().sampling.judge_temperature;
  options.transcript_ref = run.model + "/" + run.case_id + "/" + std::to_string(run.repeat);
  const auto report = assess::assess(run.transcript, program->second, assessment.roster,
                                     session->case_entry().index, scorer, options);
  run.score = report.score;
  run.indicators = report.indicators;
  run.ok = true;
}

}  // namespace

std::vector<std::string> default_termination_markers() { return {"[END]", "<END>"}; }

void validate(const VdRunConfig& c) {
  if (c.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (c.max_turns < 1) throw std::invalid_argument("max_turns must be at least 1");
  if (c.candidate.empty() || c.patient.empty()) {
    throw std::invalid_argument("candidate and patient backends are required");
  }
}

llm::ChatRequest build_doctor_request(const Transcript& so_far, double temperature) {
  llm::ChatRequest request;
  request.temperature = temperature;
  request.messages.push_back({llm::Role::kSystem, std::string(kDoctorSystem)});
  request.messages.push_back({llm::Role::kUser, std::string(kDoctorOpener)});
  for (const auto& turn : so_far) {
    request.messages.push_back(
        {turn.speaker == Speaker::kStudent ? llm::Role::kAssistant : llm::Role::kUser, turn.text});
  }
  return request;
}

VdResult run_vd_eval(const VdRunConfig& config, dialogue::SessionEngine& engine,
                     const llm::BackendRegistry& registry, const VdAssessment& assessment) {
  validate(config);
  const auto doctor = registry.get(config.candidate);
  registry.get(config.patient);  // fail fast on an unknown patient backend

  VdResult result;
  for (const auto& case_id : config.case_ids) {
    for (int r = 0; r < config.repeats; ++r) {
      VdRun run;
      run.model = config.candidate;
      run.case_id = case_id;
      run.repeat = r;
      result.runs.push_back(std::move(run));
    }
  }
  parallel_for(result.runs.size(), config.workers, [&](std::size_t i) {
    VdRun& run = result.runs[i];
    try {
      run_one(config, engine, *doctor, assessment, run);
    } catch (const std::exception& e) {
      run.ok = false;
      run.error = e.what();
    }
  });

  VdSummary& s = result.summary;
  s.model = config.candidate;
  s.runs = result.runs.size();
  std::size_t ok = 0;
  for (const auto& run : result.runs) {
    if (!run.ok) {
      ++s.failures;
      continue;
    }
    ++ok;
    s.mean_score += run.score;
    s.mean_indicators.info_density += run.indicators.info_density;
    s.mean_indicators.emotional_tendency += run.indicators.emotional_tendency;
    s.mean_indicators.response_length += run.indicators.response_length;
    s.mean_indicators.response_tokens += run.indicators.response_tokens;
    s.mean_turn_number += run.indicators.turn_number;
  }
  if (ok == 0) {
    s.mean_indicators = {};
    return result;
  }
  const double n = static_cast<double>(ok);
  s.mean_score /= n;
  s.mean_indicators.info_density /= n;
  s.mean_indicators.emotional_tendency /= n;
  s.mean_indicators.response_length /= n;
  s.mean_indicators.response_tokens /= n;
  s.mean_turn_number /= n;
  double ss = 0.0;
  for (const auto& run : result.runs) {
    if (run.ok) ss += (run.score - s.mean_score) * (run.score - s.mean_score);
  }
  s.score_stddev = std::sqrt(ss / n);
  return result;
}

nlohmann::json to_json(const VdRun& run) {
  nlohmann::json out = {{"model", run.model},     {"case_id", run.case_id},
                        {"repeat", run.repeat},   {"ok", run.ok},
                        {"ended_by", run.ended_by}, {"score", run.score},
                        {"indicators", assess::to_json(run.indicators)}};
  if (!run.ok) out["error"] = run.error;
  return out;
}

nlohmann::json to_json(const VdSummary& s) {
  nlohmann::json indicators = assess::to_json(s.mean_indicators);
  indicators["turn_number"] = s.mean_turn_number;
  return {{"model", s.model},
          {"runs", s.runs},
          {"failures", s.failures},
          {"mean_score", s.mean_score},
          {"score_stddev", s.score_stddev},
          {"mean_indicators", indicators}};
}

}  // namespace vsp::eval
