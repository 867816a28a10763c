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

#include "vsp/assess/assessor.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "support/sample_case.h"
#include "vsp/assess/containment_judge.h"

namespace vsp::assess {
namespace {

using vsp::testing::data_path;

class AssessorTest : public ::testing::Test {
 protected:
  void SetUp() override {
    entry_ = vsp::testing::sample_entry();
    register_containment_kind(registry_);
    std::ifstream in(data_path("fixtures/judges.json"));
    roster_ = load_roster(nlohmann::json::parse(in), registry_, data_path("fixtures"));
    program_ = compile_checklist(read_raw_checklist(data_path("fixtures/checklist_sample_cough.json")),
                                 nullptr);
  }

  std::shared_ptr<const dialogue::CaseEntry> entry_;
  llm::BackendRegistry registry_;
  JudgeRoster roster_;
  ScoringProgram program_;
  LexiconSentiment sentiment_;
};

TEST_F(AssessorTest, GoldenTranscriptScoresExactly) {
  auto transcript = read_transcript_file(data_path("fixtures/golden_sample_cough.jsonl"));
  ASSERT_EQ(roster_.size(), 5u);
  AssessOptions options;
  options.transcript_ref = "golden_sample_cough.jsonl";
  auto report = assess(transcript, program_, roster_, entry_->index, sentiment_, options);
  EXPECT_DOUBLE_EQ(report.aspect_fraction, 0.5);
  EXPECT_DOUBLE_EQ(report.info_fraction, 1.0);
  EXPECT_NEAR(report.score, 0.85, 1e-12);
  ASSERT_EQ(report.items.size(), 6u);
  EXPECT_TRUE(report.items[0].achieved);
  EXPECT_FALSE(report.items[1].achieved);
  EXPECT_EQ(report.items[1].votes, (Tally{0, 5, 0}));
  EXPECT_EQ(report.indicators.turn_number, 6);
  EXPECT_TRUE(report.flags.empty());

  const std::string path = data_path("fixtures/report_sample_cough.json");
  // Regenerate with VSP_WRITE_GOLDEN=1 after reviewing a deliberate change.
  if (std::getenv("VSP_WRITE_GOLDEN")) std::ofstream(path) << to_json(report).dump(2) << "\n";
  std::ifstream golden(path);
  ASSERT_TRUE(golden.good());
  EXPECT_EQ(to_json(report), nlohmann::json::parse(golden));
}

TEST_F(AssessorTest, ListingValuesDoesNotEarnInformation) {
  auto transcript = read_transcript_file(data_path("fixtures/transcript_listing.jsonl"));
  auto report = assess(transcript, program_, roster_, entry_->index, sentiment_);
  EXPECT_DOUBLE_EQ(report.info_fraction, 0.0);
  for (const auto& item : report.items) {
    if (item.kind == ItemKind::kInformation) EXPECT_FALSE(item.achieved) << item.item_id;
  }
  // The listed values really are in the doctor's turns.
  for (const char* v : {"3 days", "38.5", "amlodipine", "hypertension"}) {
    bool said = false;
    for (const auto& t : transcript) {
      said |= t.speaker == Speaker::kStudent && contains_phrase(t.text, v);
    }
    EXPECT_TRUE(said) << v;
  }
}

TEST_F(AssessorTest, SingleJudgeRosterReportsItsVerdicts) {
  auto transcript = read_transcript_file(data_path("fixtures/golden_sample_cough.jsonl"));
  llm::ScriptedBackend judge(
      {{"Item: Temperature 38.5 elicited", false, "YES", llm::ScriptRule::Scope::kLastUser},
       {"Item: Asked about family history", false, "maybe?", llm::ScriptRule::Scope::kLastUser}},
      std::string("NO"));
  JudgeRoster one = {{"solo", std::shared_ptr<const llm::ChatBackend>(&judge, [](auto*) {})}};
  auto report = assess(transcript, program_, one, entry_->index, sentiment_);
  for (const auto& item : report.items) {
    ASSERT_EQ(item.verdicts.size(), 1u);
    EXPECT_EQ(item.achieved, item.verdicts[0].decision == Decision::kAchieved);
  }
  EXPECT_TRUE(report.items[3].achieved);  // I2
  EXPECT_TRUE(report.items[1].flagged);   // A2 abstained
  EXPECT_NEAR(report.score, 0.7 * 0.25, 1e-12);
  EXPECT_EQ(report.flags.size(), 1u);
}

TEST_F(AssessorTest, RejectsBadInputs) {
  auto transcript = read_transcript_file(data_path("fixtures/golden_sample_cough.jsonl"));
  JudgeRoster even(roster_.begin(), roster_.begin() + 4);
  EXPECT_THROW(assess(transcript, program_, even, entry_->index, sentiment_),
               std::invalid_argument);
  EXPECT_THROW(assess({}, program_, roster_, entry_->index, sentiment_), std::invalid_argument);
  EXPECT_THROW(assess(transcript, ScoringProgram{}, roster_, entry_->index, sentiment_),
               std::invalid_argument);
}

TEST_F(AssessorTest, ParallelismDoesNotChangeTheReport) {
  auto transcript = read_transcript_file(data_path("fixtures/golden_sample_cough.jsonl"));
  AssessOptions serial;
  serial.max_parallel = 1;
  AssessOptions wide;
  wide.max_parallel = 32;
  EXPECT_EQ(to_json(assess(transcript, program_, roster_, entry_->index, sentiment_, serial)),
            to_json(assess(transcript, program_, roster_, entry_->index, sentiment_, wide)));
}

}  // namespace
}  // namespace vsp::assess
