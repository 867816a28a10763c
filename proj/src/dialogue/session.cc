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

#include "vsp/dialogue/session.h"

#include <algorithm>

namespace vsp::dialogue {

CaseEntry::CaseEntry(ingest::CaseScript script_in, graph::CaseGraph graph_in,
                     graph::LinkOptions link)
    : script(std::move(script_in)),
      graph(std::move(graph_in)),
      index(graph, link) {}

void CaseStore::put(std::shared_ptr<const CaseEntry> entry) {
  std::unique_lock lock(mu_);
  cases_[entry->script.case_id] = std::move(entry);
}

std::shared_ptr<const CaseEntry> CaseStore::get(const std::string& case_id) const {
  std::shared_lock lock(mu_);
  auto it = cases_.find(case_id);
  if (it == cases_.end()) throw UnknownCaseError(case_id);
  return it->second;
}

bool CaseStore::contains(const std::string& case_id) const {
  std::shared_lock lock(mu_);
  return cases_.count(case_id) > 0;
}

std::vector<std::string> CaseStore::ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, entry] : cases_) out.push_back(id);
  return out;
}

std::string_view to_string(SessionStatus status) {
  return status == SessionStatus::kActive ? "active" : "ended";
}

Session::Session(std::string id, std::shared_ptr<const CaseEntry> entry,
                 std::string backend_id, int max_turns, std::string role_card)
    : id_(std::move(id)),
      entry_(std::move(entry)),
      backend_id_(std::move(backend_id)),
      max_turns_(max_turns),
      role_card_(std::move(role_card)),
      overlay_(entry_->script.case_id, entry_->graph.policy()) {}

SessionStatus Session::status() const {
  std::lock_guard lock(mu_);
  return status_;
}

Transcript Session::transcript() const {
  std::lock_guard lock(mu_);
  return transcript_;
}

graph::CaseGraph Session::overlay() const {
  std::lock_guard lock(mu_);
  return overlay_;
}

std::vector<std::string> Session::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

int Session::student_turns() const {
  std::lock_guard lock(mu_);
  return static_cast<int>(std::count_if(
      transcript_.begin(), transcript_.end(),
      [](const Turn& t) { return t.speaker == Speaker::kStudent; }));
}

}  // namespace vsp::dialogue
