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

#include "vsp/service/service.h"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vsp/assess/containment_judge.h"
#include "vsp/eval/arena.h"
#include "vsp/eval/elo.h"
#include "vsp/eval/vd_eval.h"
#include "vsp/graph/graph_io.h"
#include "vsp/ingest/graph_builder.h"
#include "vsp/ingest/lexicon.h"
#include "vsp/ingest/llm_extractor.h"
#include "vsp/ingest/rule_extractor.h"

namespace vsp::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

ErrorReply reply(int status, const std::string& code, const std::string& message) {
  return {status, {{"error", code}, {"message", message}}};
}

const json& require(const json& body, const char* field) {
  if (!body.is_object()) throw ServiceError(400, "bad_request", "request body must be an object");
  auto it = body.find(field);
  if (it == body.end() || it->is_null()) {
    throw ServiceError(400, "bad_request", std::string("missing field '") + field + "'");
  }
  return *it;
}

std::string require_string(const json& body, const char* field) {
  const json& v = require(body, field);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw ServiceError(400, "bad_request", std::string("field '") + field + "' must be a string");
  }
  return v.get<std::string>();
}

std::unique_ptr<ingest::Extractor> make_extractor(const ServiceConfig& c,
                                                  const llm::BackendRegistry& registry) {
  if (c.extraction.kind == "llm") {
    return std::make_unique<ingest::LlmExtractor>(registry.get(c.extraction.backend),
                                                  c.sampling.extraction_temperature);
  }
  ingest::Lexicon lexicon;
  if (!c.extraction.lexicon.empty()) {
    lexicon = ingest::Lexicon::from_file(resolve_path(c, c.extraction.lexicon));
  }
  auto patterns = c.extraction.attribute_patterns.empty()
                      ? ingest::default_attribute_patterns()
                      : ingest::read_attribute_patterns(resolve_path(c, c.extraction.attribute_patterns));
  return std::make_unique<ingest::RuleBasedExtractor>(std::move(lexicon), std::move(patterns));
}

eval::EloConfig elo_from_json(const json& body) {
  eval::EloConfig elo;
  if (auto it = body.find("elo"); it != body.end() && it->is_object()) {
    elo.initial_rating = it->value("initial_rating", elo.initial_rating);
    elo.k_factor = it->value("k_factor", elo.k_factor);
    elo.shuffles = it->value("shuffles", elo.shuffles);
    elo.rng_seed = it->value("seed", elo.rng_seed);
  }
  eval::validate(elo);
  return elo;
}

}  // namespace

ErrorReply classify_error(const std::exception& error) {
  const std::string what = error.what();
  if (auto* e = dynamic_cast<const ServiceError*>(&error)) return reply(e->status(), e->code(), what);
  if (dynamic_cast<const dialogue::UnknownCaseError*>(&error)) return reply(404, "unknown_case", what);
  if (dynamic_cast<const llm::UnknownBackendError*>(&error)) {
    return reply(404, "unknown_backend", what);
  }
  if (dynamic_cast<const dialogue::SessionEndedError*>(&error)) {
    return reply(409, "session_ended", what);
  }
  if (dynamic_cast<const llm::TimeoutError*>(&error)) return reply(504, "backend_timeout", what);
  if (dynamic_cast<const llm::BackendError*>(&error)) return reply(502, "backend_error", what);
  if (dynamic_cast<const json::exception*>(&error) ||
      dynamic_cast<const ingest::SchemaError*>(&error) ||
      dynamic_cast<const assess::ChecklistFormatError*>(&error) ||
      dynamic_cast<const assess::EmptyChecklistError*>(&error) ||
      dynamic_cast<const graph::GraphError*>(&error) ||
      dynamic_cast<const std::invalid_argument*>(&error)) {
    return reply(400, "bad_request", what);
  }
  return reply(500, "internal", what);
}

bool is_safe_id(const std::string& id) {
  if (id.empty() || id.size() > 128 || id[0] == '.') return false;
  for (unsigned char c : id) {
    if (!std::isalnum(c) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

Service::Service(ServiceConfig config, Clock clock, IdSource ids)
    : config_(std::move(config)), clock_(std::move(clock)) {
  validate(config_);
  data_dir_ = resolve_path(config_, config_.data_dir);
  if (!clock_) {
    clock_ = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
  registry_ = std::make_shared<llm::BackendRegistry>();
  assess::register_containment_kind(*registry_);
  for (const auto& b : config_.backends) registry_->add_from_config(b, config_.base_dir);
  roster_ = assess::roster_from_registry(*registry_, config_.judges);
  extractor_ = make_extractor(config_, *registry_);
  if (config_.sentiment_positive.empty()) {
    sentiment_ = std::make_unique<assess::LexiconSentiment>();
  } else {
    sentiment_ = std::make_unique<assess::LexiconSentiment>(assess::LexiconSentiment::from_files(
        resolve_path(config_, config_.sentiment_positive),
        resolve_path(config_, config_.sentiment_negative)));
  }
  cases_ = std::make_shared<dialogue::CaseStore>();
  dialogue::EngineOptions options;
  options.sampling = config_.sampling;
  options.default_max_turns = config_.default_max_turns;
  engine_ = std::make_unique<dialogue::SessionEngine>(cases_, registry_, std::move(options), clock_,
                                                      std::move(ids));
  load_persisted();
}

void Service::load_persisted() {
  const fs::path case_root = fs::path(data_dir_) / "cases";
  if (fs::is_directory(case_root)) {
    for (const auto& dir : fs::directory_iterator(case_root)) {
      if (!dir.is_directory()) continue;
      try {
        auto script = ingest::read_case_script_file((dir.path() / "script.json").string());
        auto graph = graph::read_graph_file((dir.path() / "graph.tsv").string());
        auto program = assess::program_from_json(json::parse(slurp(dir.path() / "checklist.json")));
        auto entry = std::make_shared<const dialogue::CaseEntry>(std::move(script), std::move(graph));
        cases_->put(entry);
        programs_[entry->script.case_id] = {entry, std::move(program)};
      } catch (const std::exception& e) {
        std::cerr << "skipping persisted case " << dir.path() << ": " << e.what() << "\n";
      }
    }
  }
  const fs::path session_root = fs::path(data_dir_) / "sessions";
  if (!fs::is_directory(session_root)) return;
  for (const auto& dir : fs::directory_iterator(session_root)) {
    if (!dir.is_directory()) continue;
    try {
      const json meta = json::parse(slurp(dir.path() / "meta.json"));
      const std::string id = meta.at("session_id").get<std::string>();
      const auto status = meta.at("status").get<std::string>() == "ended"
                              ? dialogue::SessionStatus::kEnded
                              : dialogue::SessionStatus::kActive;
      Transcript transcript;
      if (fs::exists(dir.path() / "transcript.jsonl")) {
        transcript = parse_jsonl(slurp(dir.path() / "transcript.jsonl"));
      }
      graph::CaseGraph overlay(meta.at("case_id").get<std::string>());
      if (fs::exists(dir.path() / "overlay.tsv")) {
        overlay = graph::read_graph_file((dir.path() / "overlay.tsv").string());
      }
      auto record = std::make_shared<SessionRecord>();
      record->session = engine_->restore_session(
          id, meta.at("case_id").get<std::string>(), meta.at("backend_id").get<std::string>(),
          meta.at("max_turns").get<int>(), status, std::move(transcript), std::move(overlay));
      sessions_[id] = std::move(record);
    } catch (const std::exception& e) {
      std::cerr << "skipping persisted session " << dir.path() << ": " << e.what() << "\n";
    }
  }
}

void Service::persist_session(SessionRecord& record) const {
  const auto& s = *record.session;
  const fs::path dir = fs::path(data_dir_) / "sessions" / s.id();
  const json meta = {{"session_id", s.id()},
                     {"case_id", s.case_id()},
                     {"backend_id", s.backend_id()},
                     {"max_turns", s.max_turns()},
                     {"status", std::string(dialogue::to_string(s.status()))}};
  write_atomic(dir / "transcript.jsonl", to_jsonl(s.transcript()));
  write_atomic(dir / "overlay.tsv", graph::serialize(s.overlay()));
  write_atomic(dir / "meta.json", meta.dump(2) + "\n");
}

std::shared_ptr<Service::SessionRecord> Service::find_session(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown_session", "unknown session '" + id + "'");
  return it->second;
}

Service::CaseRecord Service::find_case(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = programs_.find(id);
  if (it == programs_.end()) throw dialogue::UnknownCaseError(id);
  return it->second;
}

std::string Service::stamp() {
  static std::atomic<unsigned> counter{0};
  return std::to_string(clock_()) + "_" + std::to_string(counter++);
}

json Service::add_case(const json& body) {
  ingest::CaseScript script;
  if (auto it = body.is_object() ? body.find("script") : body.end();
      it != body.end() && it->is_object()) {
    script = ingest::case_script_from_json(*it);
  } else if (body.is_object() && body.contains("text")) {
    script = ingest::import_plain_text(require_string(body, "text"), require_string(body, "case_id"));
  } else {
    throw ServiceError(400, "bad_request", "body needs a 'script' object or 'text'");
  }
  if (!is_safe_id(script.case_id)) {
    throw ServiceError(400, "bad_request", "case_id '" + script.case_id + "' is not a safe id");
  }
  const auto raw = assess::parse_raw_checklist(require(body, "checklist"));
  const llm::ChatBackend* classifier = nullptr;
  std::shared_ptr<const llm::ChatBackend> classifier_handle;
  if (!config_.classifier.empty()) {
    classifier_handle = registry_->get(config_.classifier);
    classifier = classifier_handle.get();
  }
  auto program = assess::compile_checklist(raw, classifier);
  auto graph = ingest::ingest_case(script, *extractor_);
  auto entry = std::make_shared<const dialogue::CaseEntry>(script, std::move(graph));

  std::lock_guard ingest_lock(ingest_mu_);
  const fs::path dir = fs::path(data_dir_) / "cases" / script.case_id;
  write_atomic(dir / "script.json", ingest::to_json(script).dump(2) + "\n");
  write_atomic(dir / "graph.tsv", graph::serialize(entry->graph));
  write_atomic(dir / "checklist.json", assess::to_json(program).dump(2) + "\n");
  cases_->put(entry);
  {
    std::unique_lock lock(mu_);
    programs_[script.case_id] = {entry, program};
  }
  return {{"case_id", script.case_id},
          {"nodes", entry->graph.nodes().size()},
          {"triples", entry->graph.triples().size()},
          {"items", program.items.size()}};
}

json Service::list_cases() const {
  json out = json::array();
  std::shared_lock lock(mu_);
  for (const auto& [id, record] : programs_) {
    out.push_back({{"case_id", id},
                   {"language", record.entry->script.language},
                   {"items", record.program.items.size()}});
  }
  return {{"cases", out}};
}

json Service::create_session(const json& body) {
  const std::string case_id = require_string(body, "case_id");
  const std::string backend_id = require_string(body, "backend_id");
  std::optional<int> max_turns;
  if (auto it = body.find("max_turns"); it != body.end() && !it->is_null()) {
    max_turns = it->get<int>();
  }
  find_case(case_id);  // sessions need a scoring program to end
  auto record = std::make_shared<SessionRecord>();
  record->session = engine_->start_session(case_id, backend_id, max_turns);
  {
    std::lock_guard persist(record->persist_mu);
    persist_session(*record);
  }
  const auto& s = *record->session;
  json out = {{"session_id", s.id()},
              {"case_id", s.case_id()},
              {"backend_id", s.backend_id()},
              {"max_turns", s.max_turns()}};
  std::unique_lock lock(mu_);
  sessions_[s.id()] = std::move(record);
  return out;
}

json Service::post_message(const std::string& session_id, const json& body) {
  auto record = find_session(session_id);
  const std::string text = require_string(body, "text");
  auto& s = *record->session;
  const std::string answer = engine_->step(s, text);
  {
    std::lock_guard persist(record->persist_mu);
    persist_session(*record);
  }
  return {{"reply", answer},
          {"student_turns", s.student_turns()},
          {"remaining", s.max_turns() - s.student_turns()},
          {"status", std::string(dialogue::to_string(s.status()))}};
}

json Service::end_session(const std::string& session_id) {
  auto record = find_session(session_id);
  std::lock_guard persist(record->persist_mu);
  const fs::path report_path = fs::path(data_dir_) / "sessions" / session_id / "report.json";
  if (fs::exists(report_path)) return json::parse(slurp(report_path));
  auto& s = *record->session;
  engine_->end_session(s);
  persist_session(*record);
  const Transcript transcript = s.transcript();
  if (transcript.empty()) {
    throw ServiceError(409, "empty_transcript", "session '" + session_id + "' has no turns");
  }
  const CaseRecord c = find_case(s.case_id());
  assess::AssessOptions options;
  options.judge_temperature = config_.sampling.judge_temperature;
  options.transcript_ref = "sessions/" + session_id + "/transcript.jsonl";
  const auto report =
      assess::assess(transcript, c.program, roster_, c.entry->index, *sentiment_, options);
  json out = assess::to_json(report);
  out["session_id"] = session_id;
  write_atomic(report_path, out.dump(2) + "\n");
  return out;
}

json Service::transcript(const std::string& session_id) const {
  auto record = find_session(session_id);
  const auto& s = *record->session;
  json turns = json::array();
  for (const auto& t : s.transcript()) turns.push_back(to_json(t));
  return {{"session_id", s.id()},
          {"case_id", s.case_id()},
          {"status", std::string(dialogue::to_string(s.status()))},
          {"max_turns", s.max_turns()},
          {"turns", turns}};
}

json Service::arena(const json& body) {
  if (!body.is_object()) throw ServiceError(400, "bad_request", "request body must be an object");
  const eval::EloConfig elo = elo_from_json(body);
  std::vector<eval::ComparisonRecord> records;
  json failures = json::array();
  if (auto it = body.find("records"); it != body.end()) {
    for (const auto& r : *it) records.push_back(eval::record_from_json(r));
  } else {
    eval::ArenaConfig config;
    config.case_ids = require(body, "case_ids").get<std::vector<std::string>>();
    config.players = require(body, "players").get<std::vector<std::string>>();
    config.questions = require(body, "questions").get<std::vector<std::string>>();
    config.judge_id = require_string(body, "judge_id");
    config.include_case = body.value("include_case", config.include_case);
    auto result = eval::run_arena(config, *engine_, *registry_);
    records = std::move(result.records);
    for (auto& f : result.failures) failures.push_back(std::move(f));
    const std::string path = (fs::path(data_dir_) / "eval" / ("arena_" + stamp() + ".jsonl")).string();
    write_atomic(path, eval::to_jsonl(records));
  }
  const auto table = eval::bootstrap_elo(records, elo);
  json out_records = json::array();
  for (const auto& r : records) out_records.push_back(eval::to_json(r));
  return {{"records", out_records}, {"ratings", eval::to_json(table)}, {"failures", failures}};
}

json Service::vd_eval(const json& body) {
  eval::VdRunConfig config;
  config.candidate = require_string(body, "candidate");
  config.patient = require_string(body, "patient");
  config.case_ids = require(body, "case_ids").get<std::vector<std::string>>();
  config.repeats = body.value("repeats", config.repeats);
  config.max_turns = body.value("max_turns", config_.default_max_turns);
  config.termination_markers = body.value("termination_markers", config.termination_markers);
  eval::validate(config);
  eval::VdAssessment assessment;
  for (const auto& id : config.case_ids) assessment.programs[id] = find_case(id).program;
  assessment.roster = roster_;
  assessment.sentiment = sentiment_.get();
  const auto result = eval::run_vd_eval(config, *engine_, *registry_, assessment);
  json runs = json::array();
  std::string lines;
  for (const auto& run : result.runs) {
    runs.push_back(eval::to_json(run));
    lines += runs.back().dump() + "\n";
  }
  write_atomic(fs::path(data_dir_) / "eval" / ("vd_" + stamp() + ".jsonl"), lines);
  return {{"summary", eval::to_json(result.summary)}, {"runs", runs}};
}

json Service::health() const {
  std::shared_lock lock(mu_);
  return {{"status", "ok"},
          {"cases", programs_.size()},
          {"sessions", sessions_.size()},
          {"backends", registry_->ids()}};
}

}  // namespace vsp::service
