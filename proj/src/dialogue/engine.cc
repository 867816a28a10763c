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

#include "vsp/dialogue/engine.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "vsp/common/text.h"
#include "vsp/dialogue/rewrite.h"
#include "vsp/ingest/graph_builder.h"

namespace vsp::dialogue {
namespace {

using graph::CaseGraph;

constexpr std::size_t kMaxFabricatedBytes = 120;

std::int64_t system_now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch())
      .count();
}

std::string random_session_id() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(rng()));
  return buf;
}

std::string strip_fences(std::string reply) {
  reply = text::trim(reply);
  if (reply.rfind("```", 0) == 0) {
    auto nl = reply.find('\n');
    reply = nl == std::string::npos ? "" : reply.substr(nl + 1);
    auto close = reply.rfind("```");
    if (close != std::string::npos) reply.erase(close);
  }
  return text::trim(reply);
}

// First non-empty line, without quotes or a trailing full stop, cut to a
// code point boundary.
std::string clean_value(const std::string& reply) {
  std::string value;
  for (const auto& line : text::split(reply, '\n')) {
    value = text::trim(line);
    if (!value.empty()) break;
  }
  while (!value.empty() && (value.front() == '"' || value.front() == '\'')) {
    value.erase(0, 1);
  }
  while (!value.empty() &&
         (value.back() == '"' || value.back() == '\'' || value.back() == '.')) {
    value.pop_back();
  }
  if (value.size() > kMaxFabricatedBytes) {
    std::size_t cut = kMaxFabricatedBytes;
    while (cut > 0 && (static_cast<unsigned char>(value[cut]) & 0xC0) == 0x80) {
      --cut;
    }
    value.erase(cut);
  }
  value = text::trim(value);
  return value.empty() ? "not sure" : value;
}

void check_alternation(const Transcript& transcript) {
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    Speaker want = i % 2 == 0 ? Speaker::kStudent : Speaker::kPatient;
    if (transcript[i].speaker != want) {
      throw std::invalid_argument("transcript turn " + std::to_string(i + 1) +
                                  " breaks student/patient alternation");
    }
  }
}

int count_student(const Transcript& transcript) {
  return static_cast<int>(std::count_if(
      transcript.begin(), transcript.end(),
      [](const Turn& t) { return t.speaker == Speaker::kStudent; }));
}

}  // namespace

std::set<std::string> default_attribute_predicates() {
  return {"age",          "alcohol_use",    "allergy",
          "blood_pressure", "body_temperature", "diet",
          "duration",     "exercise",       "family_history",
          "frequency",    "heart_rate",     "location",
          "marital_status", "occupation",   "onset",
          "severity",     "sex",            "sleep",
          "smoking_status", "travel_history", "weight"};
}

std::vector<std::string> default_patient_aliases() {
  return {"you", "your", "yours", "yourself", "you're", "you've", "你", "您"};
}

SessionEngine::SessionEngine(std::shared_ptr<const CaseStore> cases,
                             std::shared_ptr<const llm::BackendRegistry> backends,
                             EngineOptions options, Clock clock, IdSource ids)
    : cases_(std::move(cases)),
      backends_(std::move(backends)),
      options_(std::move(options)),
      clock_(clock ? std::move(clock) : Clock(system_now_ms)),
      ids_(ids ? std::move(ids) : IdSource(random_session_id)) {
  if (!cases_ || !backends_) {
    throw std::invalid_argument("session engine needs a case store and a backend registry");
  }
  for (auto& alias : options_.patient_aliases) alias = text::to_lower_ascii(alias);
}

std::shared_ptr<Session> SessionEngine::start_session(
    const std::string& case_id, const std::string& backend_id,
    std::optional<int> max_turns, std::optional<std::string> session_id) {
  auto entry = cases_->get(case_id);
  if (!backends_->contains(backend_id)) throw llm::UnknownBackendError(backend_id);
  int turns = max_turns.value_or(options_.default_max_turns);
  if (turns < 1) throw std::invalid_argument("max_turns must be at least 1");
  std::string id = session_id ? *session_id : ids_();
  return std::make_shared<Session>(std::move(id), entry, backend_id, turns,
                                   build_role_card(entry->script, options_.templates));
}

std::shared_ptr<Session> SessionEngine::restore_session(
    const std::string& session_id, const std::string& case_id,
    const std::string& backend_id, int max_turns, SessionStatus status,
    Transcript transcript, CaseGraph overlay) {
  auto entry = cases_->get(case_id);
  if (max_turns < 1) throw std::invalid_argument("max_turns must be at least 1");
  check_alternation(transcript);
  if (count_student(transcript) > max_turns) {
    throw std::invalid_argument("transcript exceeds the session turn budget");
  }
  for (const auto& t : overlay.triples()) {
    if (t.provenance != graph::Provenance::kFabricated) {
      throw std::invalid_argument("overlay holds a non-fabricated triple");
    }
  }
  (void)graph::merge(entry->graph, overlay);  // throws on a clash with the base
  auto session = std::make_shared<Session>(
      session_id, entry, backend_id, max_turns,
      build_role_card(entry->script, options_.templates));
  session->overlay_ = std::move(overlay);
  session->overlay_.set_case_id(case_id);
  if (count_student(transcript) == max_turns) status = SessionStatus::kEnded;
  session->transcript_ = std::move(transcript);
  session->status_ = status;
  return session;
}

std::vector<std::string> SessionEngine::extract_mentions(
    Session& session, const std::string& student_text) const {
  std::lock_guard lock(session.mu_);
  return extract_mentions_locked(session, student_text);
}

std::vector<std::string> SessionEngine::extract_mentions_locked(
    const Session& s, const std::string& student_text) const {
  const CaseEntry& entry = *s.entry_;
  bool has_patient = entry.graph.has_node(ingest::kPatientId);
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  auto scan = [&](const std::string& source) {
    std::vector<std::pair<std::size_t, std::string>> hits;
    for (const auto& hit : entry.index.scan(source)) {
      hits.emplace_back(hit.begin, hit.node_id);
    }
    if (has_patient) {
      for (const auto& token : text::tokenize(source)) {
        std::string word = text::to_lower_ascii(token.text);
        if (std::find(options_.patient_aliases.begin(), options_.patient_aliases.end(),
                      word) != options_.patient_aliases.end()) {
          hits.emplace_back(token.begin, std::string(ingest::kPatientId));
        }
      }
    }
    std::stable_sort(hits.begin(), hits.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [pos, id] : hits) add(id);
  };
  scan(student_text);
  for (auto it = s.transcript_.rbegin(); it != s.transcript_.rend(); ++it) {
    if (it->speaker == Speaker::kPatient) {
      scan(it->text);
      break;
    }
  }
  return out;
}

CaseGraph SessionEngine::fallback(const CaseGraph& merged,
                                  const std::vector<std::string>& mentions) const {
  CaseGraph out(merged.case_id(), merged.policy());
  for (const auto& id : mentions) {
    if (!merged.has_node(id)) continue;
    out = graph::merge(out, graph::neighborhood(merged, id, 1));
  }
  return out;
}

void SessionEngine::fabricate_missing(Session& s, const graph::Query& query,
                                      const std::vector<std::string>& mentions) const {
  for (const auto& p : query.patterns) {
    if (p.subject.is_variable() || p.predicate.is_variable() ||
        !p.object.is_variable()) {
      continue;
    }
    if (!options_.attribute_predicates.count(p.predicate.text)) continue;
    CaseGraph merged = graph::merge(s.entry_->graph, s.overlay_);
    // Constants name a node by id or by label, as in query execution.
    std::string subject;
    for (const auto& id : mentions) {
      const graph::Node* node = merged.find_node(id);
      if (node && (node->id == p.subject.text || node->label == p.subject.text)) {
        subject = id;
        break;
      }
    }
    if (subject.empty()) continue;
    if (!merged.objects_of(subject, p.predicate.text).empty()) continue;
    synthesize_locked(s, subject, p.predicate.text);
  }
}

CaseGraph SessionEngine::retrieve(Session& session,
                                  const std::vector<std::string>& mentions,
                                  const std::string& student_text) const {
  std::lock_guard lock(session.mu_);
  return retrieve_locked(session, mentions, student_text);
}

CaseGraph SessionEngine::retrieve_locked(Session& s,
                                         const std::vector<std::string>& mentions,
                                         const std::string& student_text) const {
  const CaseGraph& base = s.entry_->graph;
  if (mentions.empty()) return CaseGraph(base.case_id(), base.policy());
  CaseGraph merged = graph::merge(base, s.overlay_);

  std::set<std::string> predicates = options_.attribute_predicates;
  for (const auto& t : merged.triples()) predicates.insert(t.predicate);
  std::string predicate_list;
  for (const auto& p : predicates) {
    if (!predicate_list.empty()) predicate_list += ", ";
    predicate_list += p;
  }
  std::string mention_list;
  for (const auto& id : mentions) {
    const graph::Node* node = merged.find_node(id);
    if (!mention_list.empty()) mention_list += ", ";
    mention_list += node && node->label != id ? node->label + " (" + id + ")" : id;
  }

  const auto& tpl = options_.templates;
  llm::ChatRequest request;
  request.temperature = options_.sampling.extraction_temperature;
  request.max_tokens = options_.sampling.max_tokens;
  request.messages.push_back(
      {llm::Role::kSystem, render(tpl.query_system, {{"predicates", predicate_list}})});
  request.messages.push_back(
      {llm::Role::kUser,
       render(tpl.query_user, {{"mentions", mention_list}, {"question", student_text}})});
  std::string reply = backends_->get(s.backend_id_)->complete(request);

  graph::Query query;
  try {
    query = graph::parse_query(strip_fences(reply));
  } catch (const graph::QueryError&) {
    s.events_.push_back("query_fallback: unparsable query");
    return fallback(merged, mentions);
  }
  fabricate_missing(s, query, mentions);
  merged = graph::merge(base, s.overlay_);
  CaseGraph result = graph::matched_subgraph(merged, query);
  if (result.triple_count() == 0) {
    s.events_.push_back("query_fallback: empty result");
    return fallback(merged, mentions);
  }
  return result;
}

std::string SessionEngine::generate(Session& session, const std::string& student_text,
                                    const std::string& evidence) const {
  std::lock_guard lock(session.mu_);
  return generate_locked(session, student_text, evidence);
}

std::string SessionEngine::generate_locked(Session& s, const std::string& student_text,
                                           const std::string& evidence) const {
  const auto& tpl = options_.templates;
  llm::ChatRequest request;
  request.temperature = options_.sampling.dialogue_temperature;
  request.max_tokens = options_.sampling.max_tokens;
  request.messages.push_back({llm::Role::kSystem, s.role_card_});
  std::size_t n = s.transcript_.size();
  std::size_t from = n > options_.context_window ? n - options_.context_window : 0;
  for (std::size_t i = from; i < n; ++i) {
    const Turn& t = s.transcript_[i];
    request.messages.push_back(
        {t.speaker == Speaker::kStudent ? llm::Role::kUser : llm::Role::kAssistant,
         t.text});
  }
  std::string respond = render(
      tpl.respond_user,
      {{"evidence", evidence.empty() ? "(none)" : evidence}, {"question", student_text}});
  request.messages.push_back({llm::Role::kUser, respond});

  auto backend = backends_->get(s.backend_id_);
  for (int attempt = 0; attempt <= options_.max_regenerations; ++attempt) {
    if (attempt > 0) request.messages.back().content = tpl.reminder + respond;
    std::string reply = text::trim(backend->complete(request));
    if (reply.empty()) {
      s.events_.push_back("empty_reply");
      continue;
    }
    GuardVerdict verdict = options_.guard.check(reply);
    if (!verdict.flipped) return reply;
    s.events_.push_back("role_flip: " + verdict.reason);
  }
  s.events_.push_back("fallback_reply");
  return tpl.fallback_reply;
}

std::string SessionEngine::synthesize_attribute(Session& session,
                                                const std::string& subject_id,
                                                const std::string& predicate) const {
  std::lock_guard lock(session.mu_);
  return synthesize_locked(session, subject_id, predicate);
}

std::string SessionEngine::synthesize_locked(Session& s, const std::string& subject_id,
                                             const std::string& predicate) const {
  const CaseGraph& base = s.entry_->graph;
  const graph::Node* subject = base.find_node(subject_id);
  if (!subject) throw graph::UnknownNodeError(subject_id);
  CaseGraph merged = graph::merge(base, s.overlay_);
  if (!merged.objects_of(subject_id, predicate).empty()) {
    throw graph::ConflictError("'" + subject_id + "' already has '" + predicate + "'");
  }
  std::string evidence = rewrite(graph::neighborhood(merged, subject_id, 1));

  llm::ChatRequest request;
  request.temperature = options_.sampling.dialogue_temperature;
  request.max_tokens = options_.sampling.max_tokens;
  request.messages.push_back({llm::Role::kSystem, s.role_card_});
  request.messages.push_back(
      {llm::Role::kUser,
       render(options_.templates.fabricate_user,
              {{"subject", subject->label},
               {"predicate", predicate},
               {"evidence", evidence.empty() ? "(none)" : evidence}})});
  std::string value = clean_value(backends_->get(s.backend_id_)->complete(request));

  graph::Node literal{ingest::literal_id(subject_id, predicate, value), value,
                      graph::NodeKind::kLiteral, std::nullopt};
  s.overlay_.insert_triple(*subject, predicate, literal, graph::Provenance::kFabricated);
  s.events_.push_back("fabricated: " + subject_id + " " + predicate);
  return value;
}

std::string SessionEngine::step(Session& session, const std::string& student_text) const {
  std::lock_guard lock(session.mu_);
  if (session.status_ == SessionStatus::kEnded ||
      count_student(session.transcript_) >= session.max_turns_) {
    session.status_ = SessionStatus::kEnded;
    throw SessionEndedError(session.id_);
  }
  std::string text = text::trim(student_text);
  if (text.empty()) throw std::invalid_argument("student message is empty");

  std::int64_t asked_at = clock_();
  auto mentions = extract_mentions_locked(session, text);
  std::string evidence = rewrite(retrieve_locked(session, mentions, text));
  std::string reply = generate_locked(session, text, evidence);

  session.transcript_.push_back({Speaker::kStudent, text, asked_at, std::nullopt});
  session.transcript_.push_back(
      {Speaker::kPatient, reply, clock_(),
       evidence.empty() ? std::nullopt : std::optional<std::string>(evidence)});
  if (count_student(session.transcript_) >= session.max_turns_) {
    session.status_ = SessionStatus::kEnded;
  }
  return reply;
}

void SessionEngine::end_session(Session& session) const {
  std::lock_guard lock(session.mu_);
  session.status_ = SessionStatus::kEnded;
}

}  // namespace vsp::dialogue
