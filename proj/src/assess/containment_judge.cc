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

#include "vsp/assess/containment_judge.h"

#include <cctype>

#include "vsp/assess/judge.h"
#include "vsp/common/text.h"

namespace vsp::assess {
namespace {

bool ascii_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::vector<std::string> split_alternatives(std::string_view line) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (from <= line.size()) {
    auto bar = line.find(" | ", from);
    std::string part =
        text::trim(line.substr(from, bar == std::string_view::npos ? line.npos : bar - from));
    if (!part.empty()) out.push_back(part);
    if (bar == std::string_view::npos) break;
    from = bar + 3;
  }
  return out;
}

}  // namespace

bool contains_phrase(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  const bool left_word = ascii_alnum(needle.front());
  const bool right_word = ascii_alnum(needle.back());
  for (auto at = text::find_icase(haystack, needle); at != std::string_view::npos;
       at = text::find_icase(haystack, needle, at + 1)) {
    std::size_t end = at + needle.size();
    bool ok_left = !left_word || at == 0 || !ascii_alnum(haystack[at - 1]);
    bool ok_right = !right_word || end == haystack.size() || !ascii_alnum(haystack[end]);
    if (ok_left && ok_right) return true;
  }
  return false;
}

std::string ContainmentJudge::complete(const llm::ChatRequest& request) const {
  const std::string prompt = llm::last_user_content(request);
  if (prompt.rfind(kJudgeMarker, 0) != 0) return "UNSURE";

  std::vector<std::string> lines = text::split(prompt, '\n');
  std::string evidence;  // lines that may satisfy the item
  bool info = false;
  std::vector<std::string> needles;
  bool in_turns = false;
  for (const auto& line : lines) {
    if (line == kTranscriptHeader || line == kPatientOnlyHeader) {
      in_turns = true;
      continue;
    }
    if (in_turns) {
      if (line.empty()) {
        in_turns = false;
        continue;
      }
      evidence += line + '\n';
      continue;
    }
    std::string_view v(line);
    if (v.rfind(kKindPrefix, 0) == 0) {
      info = v.substr(kKindPrefix.size()) == "information";
    } else if (v.rfind(kExpectedValuePrefix, 0) == 0) {
      needles.push_back(text::trim(v.substr(kExpectedValuePrefix.size())));
    } else if (v.rfind(kParaphrasePrefix, 0) == 0 || v.rfind(kKeywordsPrefix, 0) == 0) {
      auto prefix = v.rfind(kParaphrasePrefix, 0) == 0 ? kParaphrasePrefix : kKeywordsPrefix;
      for (auto& alt : split_alternatives(v.substr(prefix.size()))) needles.push_back(alt);
    }
  }
  if (needles.empty()) return "UNSURE";

  const std::string_view speaker = info ? "Patient: " : "Doctor: ";
  for (const auto& line : text::split(evidence, '\n')) {
    if (line.rfind(speaker, 0) != 0) continue;
    std::string_view said = std::string_view(line).substr(speaker.size());
    for (const auto& n : needles) {
      if (contains_phrase(said, n)) return "YES";
    }
  }
  return "NO";
}

void register_containment_kind(llm::BackendRegistry& registry) {
  registry.register_kind("containment", [](const llm::BackendConfig&, const std::string&) {
    return std::make_shared<ContainmentJudge>();
  });
}

}  // namespace vsp::assess
