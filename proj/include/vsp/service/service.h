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
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsp/assess/assessor.h"
#include "vsp/dialogue/engine.h"
#include "vsp/ingest/extraction.h"
#include "vsp/service/config.h"

// Transport-independent service core. Every call takes and returns JSON so
// the HTTP layer is a thin router.
//
// On-disk layout under the data directory:
//   cases/<case_id>/script.json    case script
//   cases/<case_id>/graph.tsv       ingested graph
//   cases/<case_id>/checklist.json  compiled scoring program
//   sessions/<id>/meta.json         case, backend, budget, status
//   sessions/<id>/transcript.jsonl
//   sessions/<id>/overlay.tsv       fabricated facts
//   sessions/<id>/report.json       written when the session is assessed
//   eval/<kind>_<stamp>.jsonl       arena records and VD runs
// Files are replaced atomically (write then rename).
namespace vsp::service {

// An error with an HTTP status and a stable machine-readable code.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

struct ErrorReply {
  int status = 500;
  nlohmann::json body;  // {"error": code, "message": text}
};

// Maps library exceptions to statuses: unknown case / session / backend 404,
// ended session 409, bad input 400, backend timeout 504, other backend
// failures 502, anything else 500.
ErrorReply classify_error(const std::exception& error);

// Case and session ids are restricted to [A-Za-z0-9_.-], not starting with
// '.', at most 128 bytes.
bool is_safe_id(const std::string& id);

class Service {
 public:
  using Clock = dialogue::SessionEngine::Clock;
  using IdSource = dialogue::SessionEngine::IdSource;

  // Validates the config, builds the backends and reloads persisted cases
  // and sessions. Throws llm::ConfigError.
  explicit Service(ServiceConfig config, Clock clock = {}, IdSource ids = {});

  // {"script": {...} | "text": str, "case_id"?: str, "checklist": {...}}
  nlohmann::json add_case(const nlohmann::json& body);
  nlohmann::json list_cases() const;
  // {"case_id", "backend_id", "max_turns"?}
  nlohmann::json create_session(const nlohmann::json& body);
  // {"text"}
  nlohmann::json post_message(const std::string& session_id, const nlohmann::json& body);
  // Assesses the transcript once; later calls return the stored report.
  nlohmann::json end_session(const std::string& session_id);
  nlohmann::json transcript(const std::string& session_id) const;
  // Either {"records": [...]} to rate existing comparisons or an arena
  // description {"case_ids", "players", "questions", "judge_id",
  // "include_case"?}. Optional "elo": {"initial_rating", "k_factor",
  // "shuffles", "seed"}.
  nlohmann::json arena(const nlohmann::json& body);
  // {"candidate", "patient", "case_ids", "repeats"?, "max_turns"?,
  //  "termination_markers"?}
  nlohmann::json vd_eval(const nlohmann::json& body);
  nlohmann::json health() const;

  const ServiceConfig& config() const { return config_; }
  const std::string& data_dir() const { return data_dir_; }
  dialogue::SessionEngine& engine() { return *engine_; }

 private:
  struct CaseRecord {
    std::shared_ptr<const dialogue::CaseEntry> entry;
    assess::ScoringProgram program;
  };
  struct SessionRecord {
    std::shared_ptr<dialogue::Session> session;
    std::mutex persist_mu;  // orders snapshot writes and assessment
  };

  void load_persisted();
  void persist_session(SessionRecord& record) const;
  std::shared_ptr<SessionRecord> find_session(const std::string& id) const;
  CaseRecord find_case(const std::string& id) const;
  std::string stamp();

  ServiceConfig config_;
  std::string data_dir_;
  std::shared_ptr<llm::BackendRegistry> registry_;
  std::shared_ptr<dialogue::CaseStore> cases_;
  std::unique_ptr<dialogue::SessionEngine> engine_;
  std::unique_ptr<ingest::Extractor> extractor_;
  std::unique_ptr<assess::SentimentScorer> sentiment_;
  assess::JudgeRoster roster_;
  Clock clock_;

  mutable std::shared_mutex mu_;
  std::map<std::string, CaseRecord> programs_;
  std::map<std::string, std::shared_ptr<SessionRecord>> sessions_;
  std::mutex ingest_mu_;  // one case write at a time
};

// Remembers the reply to a mutating request by (route, key). Concurrent
// requests with the same key are serialised so the work runs once. Server
// errors (5xx) are not remembered, so a retry after one runs again.
class IdempotencyCache {
 public:
  struct Reply {
    int status = 200;
    std::string body;
  };
  template <typename Fn>
  Reply run(const std::string& scope, const std::string& key, Fn&& fn);

 private:
  struct Slot {
    std::mutex mu;
    std::optional<Reply> reply;
  };
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

template <typename Fn>
IdempotencyCache::Reply IdempotencyCache::run(const std::string& scope, const std::string& key,
                                              Fn&& fn) {
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard lock(mu_);
    auto& s = slots_[scope + "\n" + key];
    if (!s) s = std::make_shared<Slot>();
    slot = s;
  }
  std::lock_guard lock(slot->mu);
  if (slot->reply) return *slot->reply;
  Reply reply = fn();
  if (reply.status < 500) slot->reply = reply;
  return reply;
}

}  // namespace vsp::service
