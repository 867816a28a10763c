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

#include "vsp/dialogue/role_guard.h"

#include "vsp/common/text.h"

namespace vsp::dialogue {

std::vector<std::string> default_flip_phrases() {
  return {
      "as a doctor",       "as your doctor",  "i recommend",
      "i would recommend", "i suggest you",   "i'd suggest",
      "you should take",   "you should see",  "you should get",
      "my diagnosis",      "your diagnosis",  "you have been diagnosed",
      "i diagnose",        "i prescribe",     "i will prescribe",
      "let me examine",    "take this medication",
      "作为医生",          "我建议你",        "你应该服用",
      "我给你开",          "诊断是",
  };
}

RoleGuard::RoleGuard(std::vector<std::string> phrases, std::size_t min_questions,
                     double question_ratio)
    : phrases_(std::move(phrases)),
      min_questions_(min_questions),
      question_ratio_(question_ratio) {}

GuardVerdict RoleGuard::check(std::string_view reply) const {
  for (const auto& phrase : phrases_) {
    if (text::find_icase(reply, phrase) != std::string_view::npos) {
      return {true, phrase};
    }
  }
  // Sentence counting: a sentence ends at . ! ? or their full-width forms,
  // or at end of text when content remains.
  std::size_t sentences = 0;
  std::size_t questions = 0;
  bool pending = false;
  for (char32_t c : text::decode_utf8(reply)) {
    bool question = c == U'?' || c == U'？';
    bool stop = question || c == U'.' || c == U'!' || c == U'。' ||
                c == U'！';
    if (stop) {
      if (pending) {
        ++sentences;
        if (question) ++questions;
      }
      pending = false;
    } else if (!text::is_space(c)) {
      pending = true;
    }
  }
  if (pending) ++sentences;
  if (questions >= min_questions_ && sentences > 0 &&
      static_cast<double>(questions) / static_cast<double>(sentences) >=
          question_ratio_) {
    return {true, "question density"};
  }
  return {};
}

}  // namespace vsp::dialogue
