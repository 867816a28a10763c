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

#include "vsp/eval/elo.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace vsp::eval {
namespace {

double actual_score(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAWins: return 1.0;
    case Outcome::kBWins: return 0.0;
    case Outcome::kTie: return 0.5;
  }
  return 0.5;
}

// Rejection sampling keeps every index equally likely; std::shuffle's
// distribution is implementation-defined, so it is not used.
std::uint64_t uniform_below(std::uint64_t bound, std::mt19937_64& rng) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

void validate(const EloConfig& c) {
  if (!(c.k_factor > 0.0)) throw std::invalid_argument("k_factor must be positive");
  if (c.shuffles < 1) throw std::invalid_argument("shuffles must be at least 1");
}

Ratings elo_sequence(const std::vector<ComparisonRecord>& records, const EloConfig& config) {
  validate(config);
  Ratings r;
  for (const auto& rec : records) {
    validate(rec);
    r.emplace(rec.player_a, config.initial_rating);
    r.emplace(rec.player_b, config.initial_rating);
  }
  for (const auto& rec : records) {
    double& ra = r[rec.player_a];
    double& rb = r[rec.player_b];
    const double ea = 1.0 / (1.0 + std::pow(10.0, (rb - ra) / 400.0));
    const double delta = config.k_factor * (actual_score(rec.outcome) - ea);
    ra += delta;
    rb -= delta;
  }
  return r;
}

RatingTable ratings_over_orders(const std::vector<ComparisonRecord>& records,
                                const std::vector<std::vector<std::size_t>>& orders,
                                const EloConfig& config) {
  RatingTable table;
  table.vanilla = elo_sequence(records, config);
  std::vector<ComparisonRecord> reordered(records.size());
  for (const auto& order : orders) {
    if (order.size() != records.size()) {
      throw std::invalid_argument("ordering length differs from the record count");
    }
    for (std::size_t i = 0; i < order.size(); ++i) reordered[i] = records.at(order[i]);
    for (const auto& [player, rating] : elo_sequence(reordered, config)) {
      table.distribution[player].push_back(rating);
    }
  }
  for (const auto& [player, ratings] : table.distribution) {
    std::vector<double> sorted = ratings;
    std::sort(sorted.begin(), sorted.end());
    table.median[player] = sorted[(sorted.size() - 1) / 2];
  }
  return table;
}

std::vector<std::vector<std::size_t>> shuffled_orders(std::size_t n, const EloConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.rng_seed);
  std::vector<std::vector<std::size_t>> orders;
  orders.reserve(static_cast<std::size_t>(config.shuffles));
  std::vector<std::size_t> order(n);
  for (int s = 0; s < config.shuffles; ++s) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[uniform_below(i, rng)]);
    }
    orders.push_back(order);
  }
  return orders;
}

RatingTable bootstrap_elo(const std::vector<ComparisonRecord>& records, const EloConfig& config) {
  std::vector<ComparisonRecord> canonical = records;
  std::sort(canonical.begin(), canonical.end());
  RatingTable table =
      ratings_over_orders(canonical, shuffled_orders(canonical.size(), config), config);
  table.vanilla = elo_sequence(records, config);
  return table;
}

nlohmann::json to_json(const RatingTable& table) {
  nlohmann::json players = nlohmann::json::array();
  for (const auto& [player, rating] : table.vanilla) {
    nlohmann::json p = {{"player", player}, {"elo", rating}};
    if (auto it = table.median.find(player); it != table.median.end()) p["b_elo"] = it->second;
    players.push_back(std::move(p));
  }
  return {{"players", players}};
}

}  // namespace vsp::eval
