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

#include <atomic>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "support/sample_case.h"
#include "vsp/common/text.h"
#include "vsp/assess/containment_judge.h"
#include "vsp/eval/arena.h"
#include "vsp/eval/export.h"
#include "vsp/eval/vd_eval.h"

namespace vsp::eval {
namespace {

using vsp::testing::data_path;

Transcript convo(std::initializer_list<std::pair<std::string, std::string>> exchanges) {
  Transcript t;
  for (const auto& [q, a] : exchanges) {
    t.push_back({Speaker::kStudent, q, 0, {}});
    t.push_back({Speaker::kPatient, a, 0, {}});
  }
  return t;
}

std::shared_ptr<llm::ChatBackend> reply_with(std::string text) {
  return std::make_shared<llm::FunctionBackend>([text](const llm::ChatRequest&) { return text; });
}

TEST(PairwiseJudgeTest, FirstSlotBiasBecomesTie) {
  const auto a = convo({{"How are you?", "Fine."}});
  const auto b = convo({{"How are you?", "Bad."}});
  EXPECT_EQ(pairwise_judge(a, b, *reply_with("1")), Outcome::kTie);
  EXPECT_EQ(pairwise_judge(a, b, *reply_with("Conversation 2.")), Outcome::kTie);
}

TEST(PairwiseJudgeTest, MarkerOnlyInAWins) {
  const auto a = convo({{"Fever?", "Yes, MARKER."}});
  const auto b = convo({{"Fever?", "No."}});
  llm::FunctionBackend judge([](const llm::ChatRequest& r) {
    const std::string user = llm::last_user_content(r);
    const auto first = user.find("Conversation 1:");
    const auto second = user.find("Conversation 2:");
    const auto marker = user.find("MARKER");
    return marker > first && marker < second ? "1" : "2";
  });
  EXPECT_EQ(pairwise_judge(a, b, judge), Outcome::kAWins);
  EXPECT_EQ(pairwise_judge(b, a, judge), Outcome::kBWins);
}

TEST(PairwiseJudgeTest, IdenticalTranscriptsTie) {
  const auto a = convo({{"Fever?", "Yes."}});
  // Any judge that decides from content alone sees the same prompt twice.
  std::atomic<int> calls{0};
  llm::FunctionBackend judge([&](const llm::ChatRequest& r) {
    ++calls;
    return llm::last_user_content(r).size() % 2 ? "1" : "2";
  });
  EXPECT_EQ(pairwise_judge(a, a, judge), Outcome::kTie);
  EXPECT_EQ(calls.load(), 2);
}

TEST(PairwiseJudgeTest, PromptAndParsing) {
  const auto a = convo({{"Q1", "A1"}});
  const auto b = convo({{"Q2", "A2"}});
  const auto req = build_pairwise_request(a, b, "age: 45\n");
  const std::string user = llm::last_user_content(req);
  EXPECT_EQ(user.rfind("[PAIRWISE]\nCase:\nage: 45\n", 0), 0u);
  EXPECT_LT(user.find("Doctor: Q1"), user.find("Doctor: Q2"));
  EXPECT_EQ(parse_slot(" 2."), Slot::kSecond);
  EXPECT_EQ(parse_slot("A"), Slot::kFirst);
  EXPECT_EQ(parse_slot("Tie"), Slot::kTie);
  EXPECT_EQ(parse_slot("maybe"), std::nullopt);
  EXPECT_THROW(pairwise_judge(a, b, *reply_with("no idea")), llm::MalformedResponseError);
}

class HarnessTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto cases = std::make_shared<dialogue::CaseStore>();
    cases->put(vsp::testing::sample_entry());
    registry_ = std::make_shared<llm::BackendRegistry>();
    registry_->add("patient", vsp::testing::sample_patient());
    registry_->add("mute", reply_with("I'd rather not say."));
    registry_->add("doctor", std::make_shared<llm::ScriptedBackend>(llm::ScriptedBackend::from_file(
                                 data_path("fixtures/doctor_scripted.json"))));
    registry_->add("pairwise", std::make_shared<llm::ScriptedBackend>(llm::ScriptedBackend::from_file(
                                   data_path("fixtures/pairwise_judge.json"))));
    assess::register_containment_kind(*registry_);
    std::ifstream in(data_path("fixtures/judges.json"));
    assessment_.roster =
        assess::load_roster(nlohmann::json::parse(in), *registry_, data_path("fixtures"));
    assessment_.programs["sample_cough"] = assess::compile_checklist(
        assess::read_raw_checklist(data_path("fixtures/checklist_sample_cough.json")), nullptr);
    engine_ = std::make_unique<dialogue::SessionEngine>(cases, registry_);
  }

  std::shared_ptr<llm::BackendRegistry> registry_;
  std::unique_ptr<dialogue::SessionEngine> engine_;
  VdAssessment assessment_;
};

TEST_F(HarnessTest, ArenaJudgesEveryPair) {
  ArenaConfig config;
  config.case_ids = {"sample_cough"};
  config.players = {"patient", "mute"};
  config.questions = {"Have you measured your temperature?"};
  config.judge_id = "pairwise";
  const auto result = run_arena(config, *engine_, *registry_);
  EXPECT_TRUE(result.failures.empty());
  ASSERT_EQ(result.records.size(), 1u);
  EXPECT_EQ(result.records[0], (ComparisonRecord{"sample_cough", "patient", "mute", Outcome::kAWins}));
  EXPECT_EQ(result.transcripts.at("sample_cough").at("patient").size(), 2u);
}

TEST_F(HarnessTest, ArenaRecordsFailures) {
  ArenaConfig config;
  config.case_ids = {"sample_cough", "missing_case"};
  config.players = {"patient", "mute"};
  config.questions = {"Hi"};
  config.judge_id = "pairwise";
  const auto result = run_arena(config, *engine_, *registry_);
  EXPECT_EQ(result.records.size(), 1u);
  EXPECT_EQ(result.failures.size(), 2u);
}

TEST_F(HarnessTest, VdScriptedDoctorGetsKnownScore) {
  VdRunConfig config;
  config.candidate = "doctor";
  config.patient = "patient";
  config.case_ids = {"sample_cough"};
  const auto result = run_vd_eval(config, *engine_, *registry_, assessment_);
  ASSERT_EQ(result.runs.size(), 5u);
  for (const auto& run : result.runs) {
    ASSERT_TRUE(run.ok) << run.error;
    EXPECT_EQ(run.ended_by, "marker");
    EXPECT_EQ(run.indicators.turn_number, 2);
    // Duration aspect plus the duration and temperature facts.
    EXPECT_NEAR(run.score, 0.3 * 0.5 + 0.7 * 0.5, 1e-12);
    EXPECT_EQ(run.transcript.back().text, "Yes, it was 38.5 this morning.");
    EXPECT_EQ(run.transcript[2].text, "Have you measured your temperature?");
    EXPECT_EQ(to_json(run).dump().find("\"repeat\""), to_json(result.runs[0]).dump().find("\"repeat\""));
  }
  EXPECT_EQ(result.summary.failures, 0u);
  EXPECT_DOUBLE_EQ(result.summary.score_stddev, 0.0);
  EXPECT_NEAR(result.summary.mean_score, 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(result.summary.mean_turn_number, 2.0);
}

TEST_F(HarnessTest, VdMarkerAtThirdTurn) {
  registry_->add("counter", std::make_shared<llm::FunctionBackend>([](const llm::ChatRequest& r) {
    int mine = 0;
    for (const auto& m : r.messages) mine += m.role == llm::Role::kAssistant;
    if (mine == 2) return std::string("Any allergies? [END]");
    return "Question number " + std::to_string(mine + 1) + "?";
  }));
  VdRunConfig config;
  config.candidate = "counter";
  config.patient = "patient";
  config.case_ids = {"sample_cough"};
  config.repeats = 1;
  const auto result = run_vd_eval(config, *engine_, *registry_, assessment_);
  ASSERT_TRUE(result.runs[0].ok) << result.runs[0].error;
  EXPECT_EQ(result.runs[0].indicators.turn_number, 3);
  EXPECT_EQ(result.runs[0].transcript[4].text, "Any allergies?");
}

TEST_F(HarnessTest, VdSilenceAndBudget) {
  registry_->add("silent", reply_with("   "));
  registry_->add("chatty", reply_with("Tell me more?"));
  VdRunConfig config;
  config.patient = "patient";
  config.case_ids = {"sample_cough"};
  config.repeats = 1;
  config.candidate = "silent";
  auto result = run_vd_eval(config, *engine_, *registry_, assessment_);
  EXPECT_FALSE(result.runs[0].ok);  // nothing to assess
  EXPECT_EQ(result.summary.failures, 1u);

  config.candidate = "chatty";
  config.max_turns = 4;
  result = run_vd_eval(config, *engine_, *registry_, assessment_);
  ASSERT_TRUE(result.runs[0].ok) << result.runs[0].error;
  EXPECT_EQ(result.runs[0].ended_by, "max_turns");
  EXPECT_EQ(result.runs[0].indicators.turn_number, 4);
}

TEST_F(HarnessTest, VdRecordsMissingProgram) {
  assessment_.programs.clear();
  VdRunConfig config;
  config.candidate = "doctor";
  config.patient = "patient";
  config.case_ids = {"sample_cough"};
  config.repeats = 2;
  const auto result = run_vd_eval(config, *engine_, *registry_, assessment_);
  EXPECT_EQ(result.summary.failures, 2u);
  EXPECT_NE(result.runs[0].error.find("scoring program"), std::string::npos);
  config.repeats = 0;
  EXPECT_THROW(run_vd_eval(config, *engine_, *registry_, assessment_), std::invalid_argument);
}

TEST(DoctorRequestTest, RolesAreMirrored) {
  const auto req = build_doctor_request(convo({{"Q", "A"}}), 0.7);
  ASSERT_EQ(req.messages.size(), 4u);
  EXPECT_EQ(req.messages[0].role, llm::Role::kSystem);
  EXPECT_EQ(req.messages[2].role, llm::Role::kAssistant);
  EXPECT_EQ(req.messages[3].role, llm::Role::kUser);
  EXPECT_NO_THROW(llm::validate(req));
}

TEST(ExportTest, TwoPlayersOneGame) {
  const std::vector<ComparisonRecord> records = {{"c", "b", "a", Outcome::kAWins}};
  EXPECT_EQ(win_matrix_csv(records), "player,a,b\na,0,0\nb,1,0\n");
  EXPECT_EQ(win_rate_csv(records), "player,a,b\na,,0\nb,1,\n");
}

TEST(ExportTest, EmptyInputsGiveHeadersOnly) {
  const auto dir = std::filesystem::temp_directory_path() / "vsp_export_empty";
  std::filesystem::remove_all(dir);
  const auto paths = export_reports({}, dir.string());
  ASSERT_EQ(paths.size(), 4u);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(paths[0]), "player\n");
  EXPECT_EQ(slurp(paths[1]), "player\n");
  EXPECT_EQ(slurp(paths[2]), "player,shuffle,rating\n");
  EXPECT_EQ(slurp(paths[3]), "model,case_id,repeat,turn,chars,tokens\n");
}

TEST(ExportTest, MatrixSumsEqualGamesPlayed) {
  const auto records = read_records_file(data_path("fixtures/arena_records.jsonl"));
  std::map<std::string, int> games;
  for (const auto& r : records) {
    ++games[r.player_a];
    ++games[r.player_b];
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : text::split(win_matrix_csv(records), '\n')) {
    if (!line.empty()) rows.push_back(text::split(line, ','));
  }
  const std::size_t n = rows.size() - 1;
  ASSERT_EQ(n, games.size());
  for (std::size_t i = 1; i <= n; ++i) {
    double row = 0, col = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      row += std::stod(rows[i][j]);
      col += std::stod(rows[j][i]);
    }
    EXPECT_DOUBLE_EQ(row + col, games.at(rows[i][0]));
  }
}

TEST(ExportTest, ResponseLengthRows) {
  VdRun run;
  run.model = "m";
  run.case_id = "c";
  run.transcript = convo({{"How long?", "3 days"}, {"发烧吗", "是"}});
  EXPECT_EQ(response_length_csv({run}),
            "model,case_id,repeat,turn,chars,tokens\nm,c,0,1,9,2\nm,c,0,2,3,3\n");
}

}  // namespace
}  // namespace vsp::eval
