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
#include <vector>

#include "vsp/assess/checklist.h"
#include "vsp/assess/judge.h"

namespace vsp::assess {

struct Tally {
  int achieved = 0;
  int not_achieved = 0;
  int abstain = 0;

  friend bool operator==(const Tally&, const Tally&) = default;
};

struct ItemResult {
  std::string item_id;
  // Copied from the program by assess(); vote() leaves the defaults.
  ItemKind kind = ItemKind::kAspect;
  std::string description;
  bool achieved = false;
  Tally votes;
  // Set when every judge abstained.
  bool flagged = false;
  std::vector<JudgeVerdict> verdicts;
};

// Strict majority of non-abstain verdicts; an even split is not achieved.
// Throws std::invalid_argument when the verdicts name different items.
ItemResult vote(const std::vector<JudgeVerdict>& verdicts);

}  // namespace vsp::assess
