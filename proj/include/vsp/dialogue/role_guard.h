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

#include <string>
#include <string_view>
#include <vector>

namespace vsp::dialogue {

struct GuardVerdict {
  bool flipped = false;
  std::string reason;  // matched phrase, or "question density"
};

std::vector<std::string> default_flip_phrases();

// Detects replies in which the patient starts acting as the doctor: advice
// or diagnosis phrases (case-insensitive), or a reply made mostly of
// questions (at least min_questions sentences and question_ratio of all).
class RoleGuard {
 public:
  RoleGuard() : RoleGuard(default_flip_phrases()) {}
  explicit RoleGuard(std::vector<std::string> phrases, std::size_t min_questions = 3,
                     double question_ratio = 0.6);

  GuardVerdict check(std::string_view reply) const;

 private:
  std::vector<std::string> phrases_;
  std::size_t min_questions_;
  double question_ratio_;
};

}  // namespace vsp::dialogue
