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

#include "vsp/graph/case_graph.h"

namespace vsp::dialogue {

// One "subject label — predicate — object label" line per triple, in
// canonical (s, p, o) order, joined by '\n'. Underscores in the predicate
// are shown as spaces.
std::string rewrite(const graph::CaseGraph& subgraph);

}  // namespace vsp::dialogue
