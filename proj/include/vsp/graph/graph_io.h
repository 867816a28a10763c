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

#include <cstddef>
#include <string>
#include <string_view>

#include "vsp/graph/case_graph.h"

// Line-oriented, tab-separated UTF-8 graph files:
//
//   #vsp-case-graph v1<TAB>case_id
//   N<TAB>id<TAB>kind<TAB>entity_class<TAB>label
//   S<TAB>subject_id<TAB>predicate<TAB>object_id<TAB>provenance
//
// Other lines starting with '#' are comments. An absent entity class is
// written as '-'. Fields escape backslash, tab, CR and LF as \\ \t \r \n.
// serialize() writes N lines sorted by id, then S lines sorted by (s, p, o).
namespace vsp::graph {

inline constexpr std::string_view kGraphFileMagic = "#vsp-case-graph v1";

class FormatError : public GraphError {
 public:
  FormatError(std::size_t line, const std::string& message)
      : GraphError("graph file line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string serialize(const CaseGraph& graph);

// Nodes may appear in any order relative to triples. Every CaseGraph
// invariant is checked; violations raise FormatError naming the line.
CaseGraph deserialize(std::string_view text, PredicatePolicy policy = {});

CaseGraph read_graph_file(const std::string& path, PredicatePolicy policy = {});
void write_graph_file(const std::string& path, const CaseGraph& graph);

}  // namespace vsp::graph
