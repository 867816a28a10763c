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

#include "vsp/assess/vote.h"

#include <stdexcept>

namespace vsp::assess {

ItemResult vote(const std::vector<JudgeVerdict>& verdicts) {
  ItemResult result;
  result.verdicts = verdicts;
  if (!verdicts.empty()) result.item_id = verdicts.front().item_id;
  for (const auto& v : verdicts) {
    if (v.item_id != result.item_id) {
      throw std::invalid_argument("verdicts for '" + result.item_id + "' and '" +
                                  v.item_id + "' cannot be voted together");
    }
    switch (v.decision) {
      case Decision::kAchieved: ++result.votes.achieved; break;
      case Decision::kNotAchieved: ++result.votes.not_achieved; break;
      case Decision::kAbstain: ++result.votes.abstain; break;
    }
  }
  result.achieved = result.votes.achieved > result.votes.not_achieved;
  result.flagged = result.votes.achieved + result.votes.not_achieved == 0;
  return result;
}

}  // namespace vsp::assess
