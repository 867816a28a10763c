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

#include "vsp/eval/export.h"

#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "vsp/common/text.h"

namespace vsp::eval {
namespace {

// Quotes a field when it holds a comma, quote or newline.
std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  return "\"" + text::replace_all(value, "\"", "\"\"") + "\"";
}

std::string number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

struct PairTally {
  std::set<std::string> players;
  std::map<std::pair<std::string, std::string>, double> points;
  std::map<std::pair<std::string, std::string>, int> games;
};

PairTally tally(const std::vector<ComparisonRecord>& records) {
  PairTally t;
  for (const auto& r : records) {
    t.players.insert(r.player_a);
    t.players.insert(r.player_b);
    const double sa = r.outcome == Outcome::kAWins ? 1.0 : r.outcome == Outcome::kTie ? 0.5 : 0.0;
    t.points[{r.player_a, r.player_b}] += sa;
    t.points[{r.player_b, r.player_a}] += 1.0 - sa;
    ++t.games[{r.player_a, r.player_b}];
    ++t.games[{r.player_b, r.player_a}];
  }
  return t;
}

std::string matrix_header(const std::set<std::string>& players) {
  std::string out = "player";
  for (const auto& p : players) out += "," + csv_field(p);
  return out + "\n";
}

}  // namespace

std::string win_matrix_csv(const std::vector<ComparisonRecord>& records) {
  const PairTally t = tally(records);
  std::string out = matrix_header(t.players);
  for (const auto& row : t.players) {
    out += csv_field(row);
    for (const auto& col : t.players) {
      auto it = t.points.find({row, col});
      out += "," + number(it == t.points.end() ? 0.0 : it->second);
    }
    out += "\n";
  }
  return out;
}

std::string win_rate_csv(const std::vector<ComparisonRecord>& records) {
  const PairTally t = tally(records);
  std::string out = matrix_header(t.players);
  for (const auto& row : t.players) {
    out += csv_field(row);
    for (const auto& col : t.players) {
      out += ",";
      auto games = t.games.find({row, col});
      if (games == t.games.end()) continue;
      out += number(t.points.at({row, col}) / games->second);
    }
    out += "\n";
  }
  return out;
}

std::string bootstrap_csv(const RatingTable& table) {
  std::string out = "player,shuffle,rating\n";
  for (const auto& [player, ratings] : table.distribution) {
    for (std::size_t i = 0; i < ratings.size(); ++i) {
      out += csv_field(player) + "," + std::to_string(i) + "," + number(ratings[i]) + "\n";
    }
  }
  return out;
}

std::string response_length_csv(const std::vector<VdRun>& runs) {
  std::string out = "model,case_id,repeat,turn,chars,tokens\n";
  for (const auto& run : runs) {
    int turn = 0;
    for (const auto& t : run.transcript) {
      if (t.speaker != Speaker::kStudent) continue;
      ++turn;
      out += csv_field(run.model) + "," + csv_field(run.case_id) + "," +
             std::to_string(run.repeat) + "," + std::to_string(turn) + "," +
             std::to_string(text::code_point_count(t.text)) + "," +
             std::to_string(text::tokenize(t.text).size()) + "\n";
    }
  }
  return out;
}

std::vector<std::string> export_reports(const ExportInput& input, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"win_matrix.csv", win_matrix_csv(input.records)},
      {"win_rate.csv", win_rate_csv(input.records)},
      {"belo_distribution.csv", bootstrap_csv(input.ratings)},
      {"response_lengths.csv", response_length_csv(input.runs)}};
  std::vector<std::string> paths;
  for (const auto& [name, contents] : files) {
    const std::string path = (base / name).string();
    write_text_file(path, contents);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace vsp::eval
