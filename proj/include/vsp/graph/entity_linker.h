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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsp/graph/case_graph.h"

namespace vsp::graph {

// Ordered best first.
enum class MatchKind { kExact = 0, kSubstring = 1, kProximity = 2 };

struct LinkOptions {
  double similarity_threshold = 0.8;
  // Shortest side allowed in a containment match, in code points. Scripts
  // without word spacing (CJK) use the second bound.
  std::size_t min_containment = 3;
  std::size_t min_containment_cjk = 2;
  // Longest n-gram tried by scan_mentions.
  std::size_t max_ngram = 4;
};

struct LinkMatch {
  std::string node_id;
  MatchKind kind = MatchKind::kExact;
  double similarity = 1.0;

  friend bool operator==(const LinkMatch&, const LinkMatch&) = default;
};

struct MentionHit {
  std::string node_id;
  std::size_t begin = 0;  // byte offsets into the scanned text
  std::size_t end = 0;
  MatchKind kind = MatchKind::kExact;
};

// Normalised labels of a graph's entity nodes, built once and reused for
// many lookups. Holds no reference to the graph.
class EntityIndex {
 public:
  explicit EntityIndex(const CaseGraph& graph, LinkOptions options = {});

  // Exact > substring > proximity, then the longest label, then the
  // lexicographically smallest label, then id.
  std::optional<LinkMatch> link(std::string_view mention) const;

  // Scans tokenised text left to right. At each position the n-grams up to
  // max_ngram tokens are linked and the best (match kind, then length) is
  // kept; the scan resumes after it. Hits are in textual order and may
  // repeat a node.
  std::vector<MentionHit> scan(std::string_view text) const;

  const LinkOptions& options() const { return options_; }

 private:
  struct Entry {
    std::string id;
    std::string label;
    std::u32string normalized;
  };

  LinkOptions options_;
  std::vector<Entry> entries_;
};

std::optional<std::string> link_mention(const CaseGraph& graph,
                                        std::string_view mention);

}  // namespace vsp::graph
