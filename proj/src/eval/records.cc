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

#include "vsp/eval/records.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "vsp/common/text.h"

namespace vsp::eval {

using nlohmann::json;

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAWins: return "a_wins";
    case Outcome::kBWins: return "b_wins";
    case Outcome::kTie: return "tie";
  }
  return "tie";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
  if (text == "a_wins") return Outcome::kAWins;
  if (text == "b_wins") return Outcome::kBWins;
  if (text == "tie") return Outcome::kTie;
  return std::nullopt;
}

bool operator<(const ComparisonRecord& x, const ComparisonRecord& y) {
  return std::tie(x.case_id, x.player_a, x.player_b, x.outcome) <
         std::tie(y.case_id, y.player_a, y.player_b, y.outcome);
}

void validate(const ComparisonRecord& r) {
  if (r.player_a.empty() || r.player_b.empty()) {
    throw std::invalid_argument("comparison record with an empty player id");
  }
  if (r.player_a == r.player_b) {
    throw std::invalid_argument("comparison record pits '" + r.player_a + "' against itself");
  }
}

json to_json(const ComparisonRecord& r) {
  return {{"case_id", r.case_id},
          {"player_a", r.player_a},
          {"player_b", r.player_b},
          {"outcome", std::string(to_string(r.outcome))}};
}

ComparisonRecord record_from_json(const json& value) {
  ComparisonRecord r;
  try {
    r.case_id = value.value("case_id", std::string());
    r.player_a = value.at("player_a").get<std::string>();
    r.player_b = value.at("player_b").get<std::string>();
    auto outcome = parse_outcome(value.at("outcome").get<std::string>());
    if (!outcome) throw std::invalid_argument("unknown outcome");
    r.outcome = *outcome;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad comparison record: ") + e.what());
  }
  validate(r);
  return r;
}

std::string to_jsonl(const std::vector<ComparisonRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

std::vector<ComparisonRecord> parse_records_jsonl(std::string_view text) {
  std::vector<ComparisonRecord> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split(text, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("records line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ComparisonRecord> read_records_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open records file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_records_jsonl(ss.str());
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace vsp::eval
