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

#include "vsp/dialogue/rewrite.h"

#include <algorithm>

namespace vsp::dialogue {
namespace {

std::string label_of(const graph::CaseGraph& g, const std::string& id) {
  const graph::Node* node = g.find_node(id);
  return node ? node->label : id;
}

}  // namespace

std::string rewrite(const graph::CaseGraph& subgraph) {
  std::string out;
  for (const auto& t : subgraph.triples()) {
    std::string predicate = t.predicate;
    std::replace(predicate.begin(), predicate.end(), '_', ' ');
    if (!out.empty()) out += '\n';
    out += label_of(subgraph, t.subject);
    out += " — ";
    out += predicate;
    out += " — ";
    out += label_of(subgraph, t.object);
  }
  return out;
}

}  // namespace vsp::dialogue
