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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vsp::eval {

enum class Outcome { kAWins, kBWins, kTie };

std::string_view to_string(Outcome outcome);
std::optional<Outcome> parse_outcome(std::string_view text);

struct ComparisonRecord {
  std::string case_id;
  std::string player_a;
  std::string player_b;
  Outcome outcome = Outcome::kTie;

  friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

// Total order on all fields; used to canonicalise record multisets.
bool operator<(const ComparisonRecord& x, const ComparisonRecord& y);

// Throws std::invalid_argument when the players are equal or empty.
void validate(const ComparisonRecord& record);

nlohmann::json to_json(const ComparisonRecord& record);
ComparisonRecord record_from_json(const nlohmann::json& value);

// One record per line. Parse errors name the 1-based line.
std::string to_jsonl(const std::vector<ComparisonRecord>& records);
std::vector<ComparisonRecord> parse_records_jsonl(std::string_view text);
std::vector<ComparisonRecord> read_records_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace vsp::eval
