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
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsp/eval/records.h"

namespace vsp::eval {

struct EloConfig {
  double initial_rating = 1600.0;
  double k_factor = 100.0;
  int shuffles = 1000;
  std::uint64_t rng_seed = 20240101;
};

// Throws std::invalid_argument for k_factor <= 0 or shuffles < 1.
void validate(const EloConfig& config);

using Ratings = std::map<std::string, double>;

// E_a = 1 / (1 + 10^((R_b - R_a) / 400)); S = 1, 0.5, 0; both players
// updated from their pre-game ratings, in record order. Every player seen
// starts at initial_rating.
Ratings elo_sequence(const std::vector<ComparisonRecord>& records, const EloConfig& config);

struct RatingTable {
  Ratings vanilla;
  // One rating per ordering, in ordering order.
  std::map<std::string, std::vector<double>> distribution;
  // Lower median: element (n - 1) / 2 of the sorted distribution.
  Ratings median;
};

// Runs elo_sequence once per ordering (each a permutation of record
// indices) and summarises. `vanilla` is the input order.
RatingTable ratings_over_orders(const std::vector<ComparisonRecord>& records,
                                const std::vector<std::vector<std::size_t>>& orders,
                                const EloConfig& config);

// Records are first sorted canonically, so the result depends only on the
// record multiset and the seed. Orderings come from Fisher-Yates shuffles
// driven by std::mt19937_64(rng_seed) with rejection-sampled bounds.
RatingTable bootstrap_elo(const std::vector<ComparisonRecord>& records, const EloConfig& config);

// The orderings bootstrap_elo uses for `n` records.
std::vector<std::vector<std::size_t>> shuffled_orders(std::size_t n, const EloConfig& config);

nlohmann::json to_json(const RatingTable& table);

}  // namespace vsp::eval
