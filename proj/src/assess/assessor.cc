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

#include "vsp/assess/assessor.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

namespace vsp::assess {

using nlohmann::json;

JudgeRoster load_roster(const json& value, llm::BackendRegistry& registry,
                        const std::string& base_dir) {
  const json* list = &value;
  if (value.is_object()) {
    if (!value.contains("judges")) throw llm::ConfigError("roster needs 'judges'");
    list = &value["judges"];
  }
  if (!list->is_array()) throw llm::ConfigError("roster must be a list of backend configs");
  std::vector<std::string> ids;
  for (const auto& entry : *list) {
    llm::BackendConfig config = llm::backend_config_from_json(entry);
    registry.add_from_config(config, base_dir);
    ids.push_back(config.backend_id);
  }
  return roster_from_registry(registry, ids);
}

JudgeRoster roster_from_registry(const llm::BackendRegistry& registry,
                                 const std::vector<std::string>& judge_ids) {
  JudgeRoster roster;
  for (const auto& id : judge_ids) roster.push_back({id, registry.get(id)});
  return roster;
}

ScoreBreakdown aggregate_score(const std::vector<ItemResult>& results,
                               const ScoringProgram& program) {
  std::map<std::string, bool> achieved;
  for (const auto& r : results) achieved[r.item_id] = r.achieved;
  std::size_t aspects = 0, aspects_hit = 0, infos = 0, infos_hit = 0;
  for (const auto& item : program.items) {
    bool hit = achieved.count(item.id) ? achieved[item.id] : false;
    if (item.kind == ItemKind::kAspect) {
      ++aspects;
      aspects_hit += hit;
    } else {
      ++infos;
      infos_hit += hit;
    }
  }
  ScoreBreakdown out;
  out.aspect_fraction = aspects ? static_cast<double>(aspects_hit) / aspects : 0.0;
  out.info_fraction = infos ? static_cast<double>(infos_hit) / infos : 0.0;
  double wa = program.weights.aspect;
  double wi = program.weights.info;
  if (aspects == 0 && infos > 0) {
    wa = 0.0;
    wi = 1.0;
    out.flags.push_back("no aspect items: information weight renormalised to 1");
  } else if (infos == 0 && aspects > 0) {
    wa = 1.0;
    wi = 0.0;
    out.flags.push_back("no information items: aspect weight renormalised to 1");
  }
  out.score = std::clamp(wa * out.aspect_fraction + wi * out.info_fraction, 0.0, 1.0);
  return out;
}

AssessmentReport assess(const Transcript& transcript, const ScoringProgram& program,
                        const JudgeRoster& roster, const graph::EntityIndex& index,
                        const SentimentScorer& scorer, const AssessOptions& options) {
  if (transcript.empty()) throw std::invalid_argument("cannot assess an empty transcript");
  if (roster.empty() || roster.size() % 2 == 0) {
    throw std::invalid_argument("judge roster size must be odd, got " +
                                std::to_string(roster.size()));
  }
  validate(program);

  const std::size_t judges = roster.size();
  const std::size_t tasks = program.items.size() * judges;
  std::vector<JudgeVerdict> verdicts(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const auto& item = program.items[t / judges];
      const auto& judge = roster[t % judges];
      verdicts[t] = judge_item(transcript, item, judge.judge_id, *judge.backend,
                               options.judge_temperature);
    }
  };
  std::size_t threads = std::clamp<std::size_t>(options.max_parallel, 1, tasks);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  AssessmentReport report;
  report.transcript_ref = options.transcript_ref;
  for (const auto& r : roster) report.roster.push_back(r.judge_id);
  for (std::size_t i = 0; i < program.items.size(); ++i) {
    std::vector<JudgeVerdict> mine(verdicts.begin() + i * judges,
                                   verdicts.begin() + (i + 1) * judges);
    ItemResult result = vote(mine);
    result.kind = program.items[i].kind;
    result.description = program.items[i].description;
    if (result.flagged) report.flags.push_back("item " + result.item_id + ": every judge abstained");
    report.items.push_back(std::move(result));
  }
  ScoreBreakdown breakdown = aggregate_score(report.items, program);
  report.score = breakdown.score;
  report.aspect_fraction = breakdown.aspect_fraction;
  report.info_fraction = breakdown.info_fraction;
  report.flags.insert(report.flags.end(), breakdown.flags.begin(), breakdown.flags.end());
  report.indicators = compute_indicators(transcript, index, scorer);
  return report;
}

json to_json(const AssessmentReport& report) {
  json items = json::array();
  for (const auto& r : report.items) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts) {
      verdicts.push_back({{"judge", v.judge_id}, {"decision", std::string(to_string(v.decision))}});
    }
    items.push_back({{"id", r.item_id},
                     {"category", std::string(to_string(r.kind))},
                     {"text", r.description},
                     {"achieved", r.achieved},
                     {"votes",
                      {{"achieved", r.votes.achieved},
                       {"not_achieved", r.votes.not_achieved},
                       {"abstain", r.votes.abstain}}},
                     {"flagged", r.flagged},
                     {"verdicts", verdicts}});
  }
  return {{"score", report.score},
          {"aspect_fraction", report.aspect_fraction},
          {"info_fraction", report.info_fraction},
          {"items", items},
          {"indicators", to_json(report.indicators)},
          {"transcript", report.transcript_ref},
          {"roster", report.roster},
          {"flags", report.flags}};
}

}  // namespace vsp::assess
