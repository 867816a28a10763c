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
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vsp/dialogue/prompts.h"
#include "vsp/dialogue/role_guard.h"
#include "vsp/dialogue/session.h"
#include "vsp/graph/query.h"
#include "vsp/llm/chat.h"
#include "vsp/llm/registry.h"

namespace vsp::dialogue {

// Predicates that name attributes (literal-valued facts). A query pattern
// (linked entity, one of these, ?var) with no matching triple triggers
// fabrication.
std::set<std::string> default_attribute_predicates();

// Words that refer to the patient when no entity matches them.
std::vector<std::string> default_patient_aliases();

struct EngineOptions {
  std::size_t context_window = 8;  // transcript turns in the prompt
  int max_regenerations = 2;
  int default_max_turns = 20;
  std::set<std::string> attribute_predicates = default_attribute_predicates();
  std::vector<std::string> patient_aliases = default_patient_aliases();
  llm::SamplingDefaults sampling;
  PromptTemplates templates = default_templates();
  RoleGuard guard;
};

// Runs conversations over stored cases. Thread-safe: calls on one session
// are serialised by its mutex; distinct sessions proceed in parallel.
class SessionEngine {
 public:
  using Clock = std::function<std::int64_t()>;  // milliseconds
  using IdSource = std::function<std::string()>;

  SessionEngine(std::shared_ptr<const CaseStore> cases,
                std::shared_ptr<const llm::BackendRegistry> backends,
                EngineOptions options = {}, Clock clock = {}, IdSource ids = {});

  // Throws UnknownCaseError, llm::UnknownBackendError, std::invalid_argument
  // for max_turns < 1.
  std::shared_ptr<Session> start_session(const std::string& case_id,
                                         const std::string& backend_id,
                                         std::optional<int> max_turns = {},
                                         std::optional<std::string> session_id = {});

  // Rebuilds a persisted session. The overlay must only hold fabricated
  // triples and the transcript must alternate starting with the student.
  std::shared_ptr<Session> restore_session(const std::string& session_id,
                                           const std::string& case_id,
                                           const std::string& backend_id,
                                           int max_turns, SessionStatus status,
                                           Transcript transcript,
                                           graph::CaseGraph overlay);

  // Linked node ids from the student text, then the last patient turn;
  // first occurrence order, no duplicates.
  std::vector<std::string> extract_mentions(Session& session,
                                            const std::string& student_text) const;
  graph::CaseGraph retrieve(Session& session, const std::vector<std::string>& mentions,
                            const std::string& student_text) const;
  std::string generate(Session& session, const std::string& student_text,
                       const std::string& evidence) const;
  // Throws graph::ConflictError when (subject, predicate) already has a value.
  std::string synthesize_attribute(Session& session, const std::string& subject_id,
                                   const std::string& predicate) const;

  // Full turn. Throws SessionEndedError once the session has ended or its
  // student turn budget is spent.
  std::string step(Session& session, const std::string& student_text) const;
  void end_session(Session& session) const;

  const EngineOptions& options() const { return options_; }

 private:
  std::vector<std::string> extract_mentions_locked(const Session& s,
                                                   const std::string& text) const;
  graph::CaseGraph retrieve_locked(Session& s, const std::vector<std::string>& mentions,
                                   const std::string& text) const;
  std::string generate_locked(Session& s, const std::string& text,
                              const std::string& evidence) const;
  std::string synthesize_locked(Session& s, const std::string& subject_id,
                                const std::string& predicate) const;
  graph::CaseGraph fallback(const graph::CaseGraph& merged,
                            const std::vector<std::string>& mentions) const;
  void fabricate_missing(Session& s, const graph::Query& query,
                         const std::vector<std::string>& mentions) const;

  std::shared_ptr<const CaseStore> cases_;
  std::shared_ptr<const llm::BackendRegistry> backends_;
  EngineOptions options_;
  Clock clock_;
  IdSource ids_;
};

}  // namespace vsp::dialogue
