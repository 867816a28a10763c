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

#include "vsp/llm/scripted_backend.h"

#include <thread>

#include <gtest/gtest.h>

namespace vsp::llm {
namespace {

ChatRequest ask(const std::string& text) {
  return ChatRequest{{{Role::kSystem, "You are a patient."}, {Role::kUser, text}}};
}

TEST(ScriptedBackendTest, SubstringRule) {
  const ScriptedBackend b({{"temperature", false, "My temperature is 38.5."}});
  EXPECT_EQ(b.complete(ask("What is your temperature?")),
            "My temperature is 38.5.");
  EXPECT_EQ(b.complete(ask("TEMPERATURE now?")), "My temperature is 38.5.");
}

TEST(ScriptedBackendTest, DefaultForUnmatched) {
  const auto b = ScriptedBackend::from_json(nlohmann::json::parse(R"({
      "rules": [{"match": "temperature", "response": "38.5"}],
      "default": "I don't know."})"));
  EXPECT_EQ(b.complete(ask("Any allergies?")), "I don't know.");
}

TEST(ScriptedBackendTest, NoMatchWithoutDefaultThrows) {
  const ScriptedBackend b({{"temperature", false, "38.5"}});
  EXPECT_THROW(b.complete(ask("hello")), MalformedResponseError);
}

TEST(ScriptedBackendTest, FirstMatchWins) {
  const ScriptedBackend b({{"cough", false, "first"}, {"cough", false, "second"}});
  EXPECT_EQ(b.complete(ask("cough")), "first");
}

TEST(ScriptedBackendTest, RegexGroupsSubstitute) {
  const auto b = ScriptedBackend::from_json(nlohmann::json::parse(R"js([
      {"match": "how long .*have you had (the )?(\\w+)", "is_regex": true,
       "response": "The $2 started 3 days ago."}])js"));
  EXPECT_EQ(b.complete(ask("How long have you had the cough?")),
            "The cough started 3 days ago.");
}

TEST(ScriptedBackendTest, ScopeSelectsText) {
  const auto b = ScriptedBackend::from_json(nlohmann::json::parse(R"js([
      {"match": "patient", "response": "whole", "scope": "conversation"},
      {"match": "", "response": "last"}])js"));
  EXPECT_EQ(b.complete(ask("hi")), "whole");
  const auto last_only = ScriptedBackend::from_json(nlohmann::json::parse(R"js([
      {"match": "patient", "response": "whole"},
      {"match": "", "response": "last"}])js"));
  EXPECT_EQ(last_only.complete(ask("hi")), "last");
}

TEST(ScriptedBackendTest, BadFixtures) {
  EXPECT_THROW(ScriptedBackend::from_json(nlohmann::json::parse(R"js([{"match": "x"}])js")),
               std::exception);
  EXPECT_THROW(ScriptedBackend::from_json(nlohmann::json::parse(
                   R"js([{"match": "(", "is_regex": true, "response": "r"}])js")),
               std::invalid_argument);
  EXPECT_THROW(ScriptedBackend::from_json(nlohmann::json::parse(
                   R"js([{"match": "x", "response": "r", "scope": "all"}])js")),
               std::invalid_argument);
}

TEST(ScriptedBackendTest, DeterministicUnderConcurrency) {
  const ScriptedBackend b({{"(\\d+)", true, "n=$1"}}, "none");
  std::vector<std::jthread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 200; ++i) {
        const std::string n = std::to_string(t * 1000 + i);
        if (b.complete(ask("value " + n)) != "n=" + n) ++mismatches;
      }
    });
  }
  threads.clear();
  EXPECT_EQ(mismatches.load(), 0);
  EXPECT_EQ(b.calls(), 1600u);
}

}  // namespace
}  // namespace vsp::llm
