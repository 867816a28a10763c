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

#include "vsp/dialogue/engine.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "support/sample_case.h"
#include "vsp/common/text.h"
#include "vsp/dialogue/rewrite.h"
#include "vsp/graph/graph_io.h"

namespace vsp::dialogue {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using vsp::testing::kSampleQuestions;

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.rfind(prefix, 0) == 0;
}

const std::string& last_user(const llm::ChatRequest& r) {
  return r.messages.back().content;
}

class EngineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    entry_ = vsp::testing::sample_entry();
    cases_ = std::make_shared<CaseStore>();
    cases_->put(entry_);
    registry_ = std::make_shared<llm::BackendRegistry>();
    patient_ = vsp::testing::sample_patient();
    registry_->add("patient", patient_);
  }

  SessionEngine make_engine(EngineOptions options = {}) {
    return SessionEngine(cases_, registry_, std::move(options),
                         vsp::testing::step_clock(), [n = 0]() mutable {
                           return "s" + std::to_string(++n);
                         });
  }

  void add_function(const std::string& id, llm::FunctionBackend::Fn fn) {
    registry_->add(id, std::make_shared<llm::FunctionBackend>(std::move(fn)));
  }

  std::shared_ptr<const CaseEntry> entry_;
  std::shared_ptr<CaseStore> cases_;
  std::shared_ptr<llm::BackendRegistry> registry_;
  std::shared_ptr<llm::ScriptedBackend> patient_;
};

TEST_F(EngineTest, StartSessionValidatesIds) {
  auto engine = make_engine();
  EXPECT_THROW(engine.start_session("nope", "patient"), UnknownCaseError);
  EXPECT_THROW(engine.start_session("sample_cough", "nope"), llm::UnknownBackendError);
  EXPECT_THROW(engine.start_session("sample_cough", "patient", 0), std::invalid_argument);
  auto s = engine.start_session("sample_cough", "patient");
  EXPECT_EQ(s->id(), "s1");
  EXPECT_EQ(s->max_turns(), 20);
  EXPECT_EQ(s->status(), SessionStatus::kActive);
  EXPECT_THAT(s->role_card(), HasSubstr("name: Li Wei"));
}

TEST_F(EngineTest, ExtractMentionsInFirstOccurrenceOrder) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  EXPECT_THAT(engine.extract_mentions(*s, "How long have you had the cough?"),
              ElementsAre("patient", "cough"));
  EXPECT_THAT(engine.extract_mentions(*s, "Any sore throat or cough? Your cough?"),
              ElementsAre("sore_throat", "cough", "patient"));
  EXPECT_TRUE(engine.extract_mentions(*s, "Good morning.").empty());

  // The last patient turn contributes after the student text.
  engine.step(*s, "Hello, what brings you in today?");
  EXPECT_THAT(engine.extract_mentions(*s, "How long?"),
              ElementsAre("cough", "sore_throat"));
}

TEST_F(EngineTest, RetrieveWithoutMentionsSkipsBackend) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  auto g = engine.retrieve(*s, {}, "Good morning.");
  EXPECT_EQ(g.triple_count(), 0u);
  EXPECT_EQ(patient_->calls(), 0u);
}

TEST_F(EngineTest, RetrieveRunsTheBackendQuery) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  auto g = engine.retrieve(*s, {"patient", "cough"}, "How long have you had the cough?");
  EXPECT_EQ(rewrite(g), "cough — duration — 3 days");
}

graph::CaseGraph neighborhood_union(const graph::CaseGraph& g,
                                    const std::vector<std::string>& ids) {
  graph::CaseGraph out(g.case_id(), g.policy());
  for (const auto& id : ids) out = graph::merge(out, graph::neighborhood(g, id, 1));
  return out;
}

TEST_F(EngineTest, RetrieveFallsBackOnBadOrEmptyQuery) {
  add_function("garbage", [](const llm::ChatRequest&) { return "SELECT WHERE {"; });
  add_function("empty", [](const llm::ChatRequest&) {
    return "SELECT ?x WHERE { cough severity_score ?x }";
  });
  auto engine = make_engine();
  std::vector<std::string> mentions = {"cough", "amlodipine"};
  auto expected = neighborhood_union(entry_->graph, mentions);
  ASSERT_GT(expected.triple_count(), 0u);
  for (const char* backend : {"garbage", "empty"}) {
    auto s = engine.start_session("sample_cough", backend);
    auto g = engine.retrieve(*s, mentions, "Tell me about it.");
    EXPECT_EQ(graph::serialize(g), graph::serialize(expected)) << backend;
    EXPECT_THAT(s->events().back(), HasSubstr("query_fallback")) << backend;
  }
}

TEST_F(EngineTest, MissingAttributeIsFabricatedOnceAndReused) {
  std::atomic<int> fabricate_calls{0};
  add_function("fab", [&](const llm::ChatRequest& r) -> std::string {
    const auto& u = last_user(r);
    if (starts_with(u, "[QUERY]")) return "SELECT ?v WHERE { patient smoking_status ?v }";
    if (starts_with(u, "[FABRICATE]")) {
      ++fabricate_calls;
      return "\"quit ten years ago.\"\nextra line";
    }
    const std::string needle = "smoking status — ";
    auto at = u.find(needle);
    if (at == std::string::npos) return "No idea.";
    at += needle.size();
    return "I " + u.substr(at, u.find('\n', at) - at) + ".";
  });
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "fab");
  const std::string before = graph::serialize(entry_->graph);

  std::string first = engine.step(*s, "Do you smoke?");
  std::string second = engine.step(*s, "Do you smoke?");
  EXPECT_EQ(first, "I quit ten years ago.");
  EXPECT_EQ(first, second);
  EXPECT_EQ(fabricate_calls.load(), 1);

  auto overlay = s->overlay();
  ASSERT_EQ(overlay.triple_count(), 1u);
  const auto& t = *overlay.triples().begin();
  EXPECT_EQ(t.subject, "patient");
  EXPECT_EQ(t.predicate, "smoking_status");
  EXPECT_EQ(overlay.find_node(t.object)->label, "quit ten years ago");
  EXPECT_EQ(t.provenance, graph::Provenance::kFabricated);
  EXPECT_EQ(graph::serialize(entry_->graph), before);
  EXPECT_EQ(s->transcript()[1].evidence_used,
            "patient — smoking status — quit ten years ago");
}

TEST_F(EngineTest, KnownAttributeIsNotFabricated) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  engine.step(*s, "Have you measured your temperature?");
  EXPECT_EQ(s->overlay().triple_count(), 0u);
  EXPECT_THROW(engine.synthesize_attribute(*s, "patient", "body_temperature"),
               graph::ConflictError);
  EXPECT_THROW(engine.synthesize_attribute(*s, "ghost", "age"), graph::UnknownNodeError);
}

TEST_F(EngineTest, SynthesizeAfterFabricationConflicts) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  EXPECT_EQ(engine.synthesize_attribute(*s, "patient", "smoking_status"), "never smoked");
  EXPECT_THROW(engine.synthesize_attribute(*s, "patient", "smoking_status"),
               graph::ConflictError);
}

TEST_F(EngineTest, RoleFlipIsRegenerated) {
  std::atomic<int> responds{0};
  add_function("flip_once", [&](const llm::ChatRequest& r) -> std::string {
    if (!starts_with(last_user(r), "[RESPOND]") && !starts_with(last_user(r), "Reminder")) {
      return "none";
    }
    return ++responds == 1 ? "As your doctor, I recommend rest." : "It hurts when I cough.";
  });
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "flip_once");
  EXPECT_EQ(engine.step(*s, "Does it hurt?"), "It hurts when I cough.");
  EXPECT_EQ(responds.load(), 2);
  EXPECT_THAT(s->events(), ::testing::Contains(HasSubstr("role_flip")));
}

TEST_F(EngineTest, PersistentFlipUsesFallbackAfterTwoRegenerations) {
  std::atomic<int> responds{0};
  std::vector<std::string> prompts;
  add_function("flip", [&](const llm::ChatRequest& r) -> std::string {
    ++responds;
    prompts.push_back(last_user(r));
    return "Your diagnosis is bronchitis.";
  });
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "flip");
  EXPECT_EQ(engine.step(*s, "Good morning."), "I'm not sure, doctor — what do you mean?");
  EXPECT_EQ(responds.load(), 3);
  EXPECT_TRUE(starts_with(prompts[0], "[RESPOND]"));
  EXPECT_TRUE(starts_with(prompts[1], "Reminder"));
  EXPECT_THAT(s->events().back(), "fallback_reply");
}

TEST_F(EngineTest, PromptCarriesRoleCardWindowAndEvidence) {
  std::vector<llm::ChatRequest> seen;
  std::mutex mu;
  add_function("spy", [&](const llm::ChatRequest& r) -> std::string {
    std::lock_guard lock(mu);
    seen.push_back(r);
    return starts_with(last_user(r), "[QUERY]") ? "SELECT ?d WHERE { cough duration ?d }"
                                                : "Fine.";
  });
  EngineOptions options;
  options.context_window = 4;
  auto engine = make_engine(options);
  auto s = engine.start_session("sample_cough", "spy");
  for (int i = 0; i < 4; ++i) engine.step(*s, "How is the cough " + std::to_string(i) + "?");
  const auto& respond = seen.back();
  ASSERT_EQ(respond.messages.size(), 1u + 4u + 1u);
  EXPECT_EQ(respond.messages[0].role, llm::Role::kSystem);
  EXPECT_EQ(respond.messages[0].content, s->role_card());
  EXPECT_EQ(respond.messages[1].content, "How is the cough 1?");
  EXPECT_EQ(respond.messages[2].role, llm::Role::kAssistant);
  EXPECT_EQ(respond.messages[5].content,
            "[RESPOND]\nEvidence:\ncough — duration — 3 days\n\nDoctor: How is the cough 3?");
  EXPECT_DOUBLE_EQ(respond.temperature, 0.7);
  EXPECT_DOUBLE_EQ(seen[0].temperature, 0.0);
  llm::validate(respond);
}

TEST_F(EngineTest, SessionEndsAfterMaxTurns) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(s->status(), SessionStatus::kActive) << i;
    EXPECT_FALSE(engine.step(*s, kSampleQuestions[i % 6]).empty());
  }
  EXPECT_EQ(s->status(), SessionStatus::kEnded);
  EXPECT_THROW(engine.step(*s, "One more?"), SessionEndedError);
  EXPECT_EQ(s->transcript().size(), 40u);

  auto one = engine.start_session("sample_cough", "patient", 1);
  engine.step(*one, "Hello?");
  EXPECT_EQ(one->status(), SessionStatus::kEnded);
  EXPECT_THROW(engine.step(*one, "Hello?"), SessionEndedError);

  auto ended = engine.start_session("sample_cough", "patient");
  engine.end_session(*ended);
  EXPECT_THROW(engine.step(*ended, "Hello?"), SessionEndedError);
}

TEST_F(EngineTest, EmptyStudentTextIsRejected) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  EXPECT_THROW(engine.step(*s, "   "), std::invalid_argument);
  EXPECT_TRUE(s->transcript().empty());
}

TEST_F(EngineTest, BackendFailureLeavesTranscriptUntouched) {
  add_function("down", [](const llm::ChatRequest&) -> std::string {
    throw llm::TimeoutError("backend timed out");
  });
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "down");
  EXPECT_THROW(engine.step(*s, "How is the cough?"), llm::TimeoutError);
  EXPECT_TRUE(s->transcript().empty());
  EXPECT_EQ(s->status(), SessionStatus::kActive);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_F(EngineTest, SampleConversationMatchesGolden) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient");
  for (const char* q : kSampleQuestions) engine.step(*s, q);
  const std::string path = vsp::testing::data_path("fixtures/golden_sample_cough.jsonl");
  // Regenerate with VSP_WRITE_GOLDEN=1 after reviewing a deliberate change.
  if (std::getenv("VSP_WRITE_GOLDEN")) std::ofstream(path, std::ios::binary) << to_jsonl(s->transcript());
  const std::string golden = read_file(path);
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(to_jsonl(s->transcript()), golden);
  EXPECT_EQ(s->overlay().triple_count(), 1u);
}

TEST_F(EngineTest, RestoreSessionContinuesTheConversation) {
  auto engine = make_engine();
  auto s = engine.start_session("sample_cough", "patient", 4);
  engine.step(*s, kSampleQuestions[0]);
  engine.step(*s, kSampleQuestions[5]);

  auto r = engine.restore_session(s->id(), s->case_id(), s->backend_id(), 4,
                                  s->status(), s->transcript(), s->overlay());
  EXPECT_EQ(r->transcript(), s->transcript());
  EXPECT_EQ(graph::serialize(r->overlay()), graph::serialize(s->overlay()));
  EXPECT_EQ(engine.step(*r, "Do you smoke?"), "No, I have never smoked.");
  EXPECT_EQ(r->overlay().triple_count(), 1u);

  auto bad = s->transcript();
  std::swap(bad[0], bad[1]);
  EXPECT_THROW(engine.restore_session("x", "sample_cough", "patient", 4,
                                      SessionStatus::kActive, bad, {}),
               std::invalid_argument);
  graph::CaseGraph scripted_overlay("sample_cough");
  scripted_overlay.insert_triple(*entry_->graph.find_node("patient"), "diet",
                                 {"lit:x", "rice", graph::NodeKind::kLiteral, std::nullopt});
  EXPECT_THROW(engine.restore_session("x", "sample_cough", "patient", 4,
                                      SessionStatus::kActive, {}, scripted_overlay),
               std::invalid_argument);
  EXPECT_EQ(engine.restore_session("x", "sample_cough", "patient", 1,
                                   SessionStatus::kActive,
                                   {s->transcript()[0], s->transcript()[1]}, {})
                ->status(),
            SessionStatus::kEnded);
}

// Random sessions over a backend that invents a different value on every
// fabrication request. Checks the session invariants after each run.
TEST_F(EngineTest, RandomSessionsKeepInvariants) {
  static const char* kPool[] = {
      "Do you smoke?",           "How much do you drink?",  "Do you have allergies?",
      "How long have you had the cough?", "What is your weight?", "Hello.",
      "Tell me about the sore throat.",   "How is your sleep?",   "What is your diet?",
  };
  // Questions whose query targets one attribute of a mentioned entity. The
  // rest fall back to neighborhoods that depend on the previous reply.
  static const std::set<std::string> kAttributeQuestions = {
      "Do you smoke?", "How much do you drink?", "Do you have allergies?",
      "How long have you had the cough?", "What is your weight?",
      "How is your sleep?", "What is your diet?",
  };
  static const std::map<std::string, std::string> kQuery = {
      {"smoke", "SELECT ?v WHERE { patient smoking_status ?v }"},
      {"drink", "SELECT ?v WHERE { patient alcohol_use ?v }"},
      {"allerg", "SELECT ?v WHERE { patient allergy ?v }"},
      {"long", "SELECT ?v WHERE { cough duration ?v }"},
      {"weight", "SELECT ?v WHERE { patient weight ?v }"},
      {"sore throat", "SELECT ?v WHERE { sore_throat duration ?v }"},
      {"sleep", "SELECT ?v WHERE { patient sleep ?v }"},
      {"diet", "SELECT ?v WHERE { patient diet ?v }"},
  };
  std::mt19937 rng(4242);
  std::atomic<unsigned> fab_counter{0};
  add_function("random", [&](const llm::ChatRequest& r) -> std::string {
    const auto& u = last_user(r);
    if (starts_with(u, "[FABRICATE]")) return "value " + std::to_string(++fab_counter);
    if (starts_with(u, "[QUERY]")) {
      const std::string question = u.substr(u.find("Question: "));
      for (const auto& [needle, q] : kQuery) {
        if (text::find_icase(question, needle) != std::string::npos) return q;
      }
      return "no query";
    }
    auto ev = u.find("Evidence:\n");
    return "Answer: " + u.substr(ev + 10, u.find("\n\nDoctor:") - ev - 10);
  });
  auto engine = make_engine();
  const std::string base_before = graph::serialize(entry_->graph);

  for (int run = 0; run < 100; ++run) {
    int max_turns = std::uniform_int_distribution<int>(1, 12)(rng);
    auto s = engine.start_session("sample_cough", "random", max_turns);
    std::map<std::string, std::string> answers;
    int steps = std::uniform_int_distribution<int>(1, max_turns + 3)(rng);
    for (int i = 0; i < steps; ++i) {
      std::string q = kPool[rng() % std::size(kPool)];
      if (s->status() == SessionStatus::kEnded) {
        EXPECT_THROW(engine.step(*s, q), SessionEndedError);
        continue;
      }
      std::string reply = engine.step(*s, q);
      if (!kAttributeQuestions.count(q)) continue;
      auto [it, fresh] = answers.emplace(q, reply);
      EXPECT_EQ(it->second, reply) << "run " << run << " asked twice: " << q;
    }
    auto transcript = s->transcript();
    EXPECT_LE(transcript.size(), 2u * static_cast<unsigned>(max_turns));
    for (std::size_t i = 0; i < transcript.size(); ++i) {
      EXPECT_EQ(transcript[i].speaker, i % 2 == 0 ? Speaker::kStudent : Speaker::kPatient);
      EXPECT_FALSE(transcript[i].text.empty());
    }
    const graph::CaseGraph overlay = s->overlay();
    for (const auto& t : overlay.triples()) {
      EXPECT_EQ(t.provenance, graph::Provenance::kFabricated);
    }
    EXPECT_TRUE(overlay.validate().empty());
    EXPECT_NO_THROW(graph::merge(entry_->graph, overlay));
  }
  EXPECT_EQ(graph::serialize(entry_->graph), base_before);
  EXPECT_GT(fab_counter.load(), 50u);
}

TEST_F(EngineTest, ConcurrentSessionsAndSharedSession) {
  auto engine = make_engine();
  std::vector<std::shared_ptr<Session>> sessions;
  for (int i = 0; i < 8; ++i) sessions.push_back(engine.start_session("sample_cough", "patient"));
  auto shared = engine.start_session("sample_cough", "patient");
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      for (const char* q : kSampleQuestions) {
        engine.step(*sessions[i], q);
        try {
          engine.step(*shared, q);
        } catch (const SessionEndedError&) {
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& s : sessions) EXPECT_EQ(s->transcript().size(), 12u);
  auto t = shared->transcript();
  EXPECT_EQ(t.size(), 40u);  // 48 attempts, 20-turn budget
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t[i].speaker, i % 2 == 0 ? Speaker::kStudent : Speaker::kPatient);
  }
  EXPECT_EQ(shared->overlay().triple_count(), 1u);
}

}  // namespace
}  // namespace vsp::dialogue
