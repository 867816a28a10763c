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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "support/sample_case.h"
#include "vsp/eval/elo.h"
#include "vsp/eval/records.h"

namespace vsp::eval {
namespace {

std::vector<ComparisonRecord> fixture_records() {
  return read_records_file(testing::data_path("fixtures/arena_records.jsonl"));
}

TEST(RecordsTest, JsonlRoundTrip) {
  const auto records = fixture_records();
  ASSERT_EQ(records.size(), 50u);
  EXPECT_EQ(parse_records_jsonl(to_jsonl(records)), records);
}

TEST(RecordsTest, RejectsSelfPlayAndBadOutcome) {
  EXPECT_THROW(parse_records_jsonl(R"({"player_a":"x","player_b":"x","outcome":"tie"})"),
               std::invalid_argument);
  EXPECT_THROW(parse_records_jsonl(R"({"player_a":"x","player_b":"y","outcome":"draw"})"),
               std::invalid_argument);
}

TEST(EloTest, SingleGameExamples) {
  EloConfig config;
  auto r = elo_sequence({{"c", "a", "b", Outcome::kAWins}}, config);
  EXPECT_DOUBLE_EQ(r["a"], 1650.0);
  EXPECT_DOUBLE_EQ(r["b"], 1550.0);

  r = elo_sequence({{"c", "a", "b", Outcome::kTie}}, config);
  EXPECT_DOUBLE_EQ(r["a"], 1600.0);
  EXPECT_DOUBLE_EQ(r["b"], 1600.0);
}

TEST(EloTest, HigherRatedWinnerGainsFormulaAmount) {
  // Ratings start equal, so b is pushed down by two losses to c first.
  EloConfig config;
  std::vector<ComparisonRecord> records = {{"c", "c", "b", Outcome::kAWins},
                                           {"c", "c", "b", Outcome::kAWins}};
  const double rb = elo_sequence(records, config)["b"];
  records.push_back({"c", "a", "b", Outcome::kAWins});
  const double expected_gain = 100.0 * (1.0 - 1.0 / (1.0 + std::pow(10.0, (rb - 1600.0) / 400.0)));
  EXPECT_NEAR(elo_sequence(records, config)["a"] - 1600.0, expected_gain, 1e-9);
}

TEST(EloTest, RoundRobinMatchesIndependentTrace) {
  // Values from an independent evaluation of the update formula.
  const std::vector<ComparisonRecord> records = {
      {"x", "alpha", "beta", Outcome::kAWins},  {"x", "beta", "gamma", Outcome::kTie},
      {"x", "alpha", "gamma", Outcome::kBWins}, {"x", "beta", "alpha", Outcome::kAWins},
      {"x", "gamma", "beta", Outcome::kBWins},  {"x", "gamma", "alpha", Outcome::kTie}};
  const auto r = elo_sequence(records, EloConfig{});
  EXPECT_NEAR(r.at("alpha"), 1545.220351777827, 1e-9);
  EXPECT_NEAR(r.at("beta"), 1667.6960366445137, 1e-9);
  EXPECT_NEAR(r.at("gamma"), 1587.0836115776592, 1e-9);
}

TEST(EloTest, TotalRatingIsConserved) {
  std::mt19937_64 rng(3);
  const auto records = fixture_records();
  for (int trial = 0; trial < 20; ++trial) {
    auto shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto r = elo_sequence(shuffled, EloConfig{});
    double total = 0.0;
    for (const auto& [p, v] : r) total += v;
    EXPECT_NEAR(total, 1600.0 * r.size(), 1e-6);
  }
}

TEST(EloTest, ConfigValidation) {
  EloConfig bad;
  bad.k_factor = 0;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = {};
  bad.shuffles = 0;
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

TEST(BootstrapEloTest, ReproducibleBitExactly) {
  const auto records = fixture_records();
  const auto first = bootstrap_elo(records, EloConfig{});
  const auto second = bootstrap_elo(records, EloConfig{});
  EXPECT_EQ(first.median, second.median);
  EXPECT_EQ(first.distribution, second.distribution);
  for (const auto& [p, ratings] : first.distribution) EXPECT_EQ(ratings.size(), 1000u);
}

TEST(BootstrapEloTest, InvariantUnderInputReordering) {
  auto records = fixture_records();
  const auto base = bootstrap_elo(records, EloConfig{});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(records.begin(), records.end(), rng);
    EXPECT_EQ(bootstrap_elo(records, EloConfig{}).median, base.median);
  }
}

TEST(BootstrapEloTest, MedianIsAnOrderStatistic) {
  const auto table = bootstrap_elo(fixture_records(), EloConfig{});
  for (const auto& [p, ratings] : table.distribution) {
    auto sorted = ratings;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(table.median.at(p), sorted[(sorted.size() - 1) / 2]);
  }
}

TEST(BootstrapEloTest, SingleRecordEqualsVanilla) {
  const std::vector<ComparisonRecord> one = {{"c", "a", "b", Outcome::kBWins}};
  const auto table = bootstrap_elo(one, EloConfig{});
  EXPECT_EQ(table.median, table.vanilla);
}

TEST(BootstrapEloTest, IdentityOrderEqualsVanilla) {
  const auto records = fixture_records();
  std::vector<std::size_t> identity(records.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  const auto table = ratings_over_orders(records, {identity}, EloConfig{});
  EXPECT_EQ(table.median, elo_sequence(records, EloConfig{}));
}

TEST(BootstrapEloTest, RelabelingPermutesRatings) {
  // Renaming keeps the canonical order when the mapping preserves id order.
  const auto records = fixture_records();
  auto rename = [](const std::string& p) { return "m_" + p; };
  auto relabeled = records;
  for (auto& r : relabeled) {
    r.player_a = rename(r.player_a);
    r.player_b = rename(r.player_b);
  }
  const auto a = bootstrap_elo(records, EloConfig{});
  const auto b = bootstrap_elo(relabeled, EloConfig{});
  for (const auto& [p, v] : a.median) EXPECT_EQ(b.median.at(rename(p)), v);
}

TEST(BootstrapEloTest, ShuffledOrdersArePermutations) {
  EloConfig config;
  config.shuffles = 50;
  for (const auto& order : shuffled_orders(17, config)) {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
  }
}

}  // namespace
}  // namespace vsp::eval
