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
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsp/common/transcript.h"
#include "vsp/graph/case_graph.h"
#include "vsp/graph/entity_linker.h"
#include "vsp/ingest/case_script.h"

namespace vsp::dialogue {

class UnknownCaseError : public std::runtime_error {
 public:
  explicit UnknownCaseError(const std::string& id)
      : std::runtime_error("unknown case '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class SessionEndedError : public std::runtime_error {
 public:
  explicit SessionEndedError(const std::string& id)
      : std::runtime_error("session '" + id + "' has ended") {}
};

// An ingested case. Immutable once stored.
struct CaseEntry {
  CaseEntry(ingest::CaseScript script, graph::CaseGraph graph,
            graph::LinkOptions link = {});

  ingest::CaseScript script;
  graph::CaseGraph graph;
  graph::EntityIndex index;
};

class CaseStore {
 public:
  // Replaces an existing case with the same id.
  void put(std::shared_ptr<const CaseEntry> entry);
  // Throws UnknownCaseError.
  std::shared_ptr<const CaseEntry> get(const std::string& case_id) const;
  bool contains(const std::string& case_id) const;
  std::vector<std::string> ids() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<const CaseEntry>> cases_;
};

enum class SessionStatus { kActive, kEnded };

std::string_view to_string(SessionStatus status);

// Mutable state of one conversation. All access goes through the engine or
// the locked accessors below.
class Session {
 public:
  Session(std::string id, std::shared_ptr<const CaseEntry> entry,
          std::string backend_id, int max_turns, std::string role_card);

  const std::string& id() const { return id_; }
  const std::string& case_id() const { return entry_->script.case_id; }
  const std::string& backend_id() const { return backend_id_; }
  int max_turns() const { return max_turns_; }
  const std::string& role_card() const { return role_card_; }
  const CaseEntry& case_entry() const { return *entry_; }

  SessionStatus status() const;
  Transcript transcript() const;
  graph::CaseGraph overlay() const;
  std::vector<std::string> events() const;
  int student_turns() const;

 private:
  friend class SessionEngine;

  const std::string id_;
  const std::shared_ptr<const CaseEntry> entry_;
  const std::string backend_id_;
  const int max_turns_;
  const std::string role_card_;

  mutable std::mutex mu_;
  SessionStatus status_ = SessionStatus::kActive;
  Transcript transcript_;
  graph::CaseGraph overlay_;
  std::vector<std::string> events_;
};

}  // namespace vsp::dialogue
