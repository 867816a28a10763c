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

#include <string>
#include <vector>

#include "vsp/eval/elo.h"
#include "vsp/eval/records.h"
#include "vsp/eval/vd_eval.h"

namespace vsp::eval {

// Plot-ready CSV text. Players are sorted by id.
//
// Win matrix: cell (i, j) holds i's points against j (1 per win, 0.5 per
// tie), so row_sum(i) + column_sum(i) equals the games i played.
std::string win_matrix_csv(const std::vector<ComparisonRecord>& records);
// Win rate: points / games between i and j; empty cell when they never met.
std::string win_rate_csv(const std::vector<ComparisonRecord>& records);
// Long format: player,shuffle,rating.
std::string bootstrap_csv(const RatingTable& table);
// One row per doctor turn: model,case_id,repeat,turn,chars,tokens.
std::string response_length_csv(const std::vector<VdRun>& runs);

struct ExportInput {
  std::vector<ComparisonRecord> records;
  RatingTable ratings;
  std::vector<VdRun> runs;
};

// Writes win_matrix.csv, win_rate.csv, belo_distribution.csv and
// response_lengths.csv into `dir` (created if missing). Returns the paths.
std::vector<std::string> export_reports(const ExportInput& input, const std::string& dir);

}  // namespace vsp::eval
