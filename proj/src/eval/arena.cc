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

#include "vsp/eval/arena.h"

#include <cctype>
#include <mutex>
#include <stdexcept>

#include "vsp/common/parallel.h"
#include "vsp/common/text.h"

namespace vsp::eval {
namespace {

constexpr std::string_view kPairwiseMarker = "[PAIRWISE]";

std::string render(const Transcript& transcript) {
  std::string out;
  for (const auto& turn : transcript) {
    out += turn.speaker == Speaker::kStudent ? "Doctor: " : "Patient: ";
    out += turn.text;
    out += '\n';
  }
  return out;
}

Slot ask(const Transcript& first, const Transcript& second, const llm::ChatBackend& judge,
         const std::string& case_text) {
  const std::string reply = judge.complete(build_pairwise_request(first, second, case_text));
  auto slot = parse_slot(reply);
  if (!slot) throw llm::MalformedResponseError("unreadable pairwise verdict: " + reply);
  return *slot;
}

}  // namespace

std::optional<Slot> parse_slot(std::string_view reply) {
  std::vector<std::string> words(1);
  for (char c : text::to_lower_ascii(text::trim(reply))) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      words.back() += c;
    } else if (!words.back().empty()) {
      words.emplace_back();
    }
  }
  std::size_t i = 0;
  while (i + 1 < words.size() &&
         (words[i] == "conversation" || words[i] == "answer" || words[i] == "option")) {
    ++i;
  }
  const std::string& word = words[i];
  if (word == "1" || word == "a" || word == "first") return Slot::kFirst;
  if (word == "2" || word == "b" || word == "second") return Slot::kSecond;
  if (word == "tie" || word == "equal" || word == "draw") return Slot::kTie;
  return std::nullopt;
}

llm::ChatRequest build_pairwise_request(const Transcript& first, const Transcript& second,
                                        const std::string& case_text, double temperature) {
  std::string user(kPairwiseMarker);
  user += "\n";
  if (!case_text.empty()) user += "Case:\n" + case_text + "\n";
  user += "Conversation 1:\n" + render(first) + "\nConversation 2:\n" + render(second);
  user +=
      "\nWhich conversation shows the better standardized patient: faithful to the case, "
      "answering only what was asked, staying in role? Answer 1, 2 or tie.";
  llm::ChatRequest request;
  request.messages = {
      {llm::Role::kSystem, "You compare two simulated patients played against the same case."},
      {llm::Role::kUser, std::move(user)}};
  request.temperature = temperature;
  request.max_tokens = 8;
  return request;
}

Outcome pairwise_judge(const Transcript& a, const Transcript& b, const llm::ChatBackend& judge,
                       const std::string& case_text) {
  const Slot forward = ask(a, b, judge, case_text);
  const Slot backward = ask(b, a, judge, case_text);
  if (forward == Slot::kFirst && backward == Slot::kSecond) return Outcome::kAWins;
  if (forward == Slot::kSecond && backward == Slot::kFirst) return Outcome::kBWins;
  return Outcome::kTie;
}

std::string case_summary(const ingest::CaseScript& script) {
  std::string out;
  for (const auto& [key, value] : script.profile) out += key + ": " + value + "\n";
  for (const auto& section : script.sections) {
    out += "# " + section.title + "\n" + section.body + "\n";
  }
  return out;
}

ArenaResult run_arena(const ArenaConfig& config, dialogue::SessionEngine& engine,
                      const llm::BackendRegistry& registry) {
  if (config.players.size() < 2) throw std::invalid_argument("arena needs at least two players");
  if (config.questions.empty()) throw std::invalid_argument("arena needs a question script");
  const auto judge = registry.get(config.judge_id);

  struct Play {
    std::string case_id;
    std::string player;
    std::optional<Transcript> transcript;
    std::string case_text;
    std::string error;
  };
  std::vector<Play> plays;
  for (const auto& case_id : config.case_ids) {
    for (const auto& player : config.players) plays.push_back({case_id, player, {}, {}, {}});
  }
  parallel_for(plays.size(), config.workers, [&](std::size_t i) {
    Play& play = plays[i];
    try {
      auto session = engine.start_session(play.case_id, play.player,
                                          static_cast<int>(config.questions.size()));
      for (const auto& q : config.questions) engine.step(*session, q);
      play.transcript = session->transcript();
      play.case_text = case_summary(session->case_entry().script);
      engine.end_session(*session);
    } catch (const std::exception& e) {
      play.error = e.what();
    }
  });

  ArenaResult result;
  std::map<std::string, std::string> case_text;
  for (const auto& play : plays) {
    if (play.transcript) {
      result.transcripts[play.case_id][play.player] = *play.transcript;
      if (config.include_case) case_text[play.case_id] = play.case_text;
    } else {
      result.failures.push_back("session " + play.case_id + "/" + play.player + ": " +
                                play.error);
    }
  }

  struct Match {
    std::string case_id;
    std::string a;
    std::string b;
    std::optional<Outcome> outcome;
    std::string error;
  };
  std::vector<Match> matches;
  for (const auto& case_id : config.case_ids) {
    auto it = result.transcripts.find(case_id);
    if (it == result.transcripts.end()) continue;
    for (std::size_t i = 0; i < config.players.size(); ++i) {
      for (std::size_t j = i + 1; j < config.players.size(); ++j) {
        if (it->second.count(config.players[i]) && it->second.count(config.players[j])) {
          matches.push_back({case_id, config.players[i], config.players[j], {}, {}});
        }
      }
    }
  }
  parallel_for(matches.size(), config.workers, [&](std::size_t i) {
    Match& m = matches[i];
    const auto& by_player = result.transcripts.at(m.case_id);
    const auto text_it = case_text.find(m.case_id);
    try {
      m.outcome = pairwise_judge(by_player.at(m.a), by_player.at(m.b), *judge,
                                 text_it == case_text.end() ? std::string() : text_it->second);
    } catch (const std::exception& e) {
      m.error = e.what();
    }
  });
  for (const auto& m : matches) {
    if (m.outcome) {
      result.records.push_back({m.case_id, m.a, m.b, *m.outcome});
    } else {
      result.failures.push_back("judge " + m.case_id + "/" + m.a + " vs " + m.b + ": " + m.error);
    }
  }
  return result;
}

}  // namespace vsp::eval
