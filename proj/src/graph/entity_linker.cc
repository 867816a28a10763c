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

#include "vsp/graph/entity_linker.h"

#include <algorithm>
#include <tuple>

#include "vsp/common/text.h"

namespace vsp::graph {
namespace {

bool has_cjk(std::u32string_view s) {
  return std::any_of(s.begin(), s.end(), text::is_cjk);
}

std::string join_tokens(const std::vector<text::Token>& tokens,
                        std::size_t first, std::size_t count) {
  std::string out;
  for (std::size_t k = first; k < first + count; ++k) {
    if (k > first && !tokens[k - 1].cjk && !tokens[k].cjk) out.push_back(' ');
    out += tokens[k].text;
  }
  return out;
}

}  // namespace

EntityIndex::EntityIndex(const CaseGraph& graph, LinkOptions options)
    : options_(options) {
  for (const auto& [id, node] : graph.nodes()) {
    if (node.kind != NodeKind::kEntity) continue;
    entries_.push_back({id, node.label, text::normalize(node.label)});
  }
}

std::optional<LinkMatch> EntityIndex::link(std::string_view mention) const {
  const std::u32string m = text::normalize(mention);
  if (m.empty()) return std::nullopt;

  const Entry* best_entry = nullptr;
  LinkMatch best;
  auto better = [&](const LinkMatch& cand, const Entry& e) {
    if (best_entry == nullptr) return true;
    return std::make_tuple(static_cast<int>(cand.kind),
                           -static_cast<long>(e.normalized.size()),
                           std::string_view(e.label), std::string_view(e.id)) <
           std::make_tuple(static_cast<int>(best.kind),
                           -static_cast<long>(best_entry->normalized.size()),
                           std::string_view(best_entry->label),
                           std::string_view(best_entry->id));
  };

  for (const Entry& e : entries_) {
    const std::u32string& label = e.normalized;
    if (label.empty()) continue;
    std::optional<LinkMatch> cand;
    if (label == m) {
      cand = LinkMatch{e.id, MatchKind::kExact, 1.0};
    } else {
      const std::u32string& shorter = label.size() < m.size() ? label : m;
      const std::u32string& longer = label.size() < m.size() ? m : label;
      const std::size_t min_len = has_cjk(shorter)
                                      ? options_.min_containment_cjk
                                      : options_.min_containment;
      if (shorter.size() >= min_len &&
          longer.find(shorter) != std::u32string::npos) {
        cand = LinkMatch{e.id, MatchKind::kSubstring,
                         text::normalized_similarity(label, m)};
      } else {
        const double sim = text::normalized_similarity(label, m);
        if (sim >= options_.similarity_threshold) {
          cand = LinkMatch{e.id, MatchKind::kProximity, sim};
        }
      }
    }
    if (cand && better(*cand, e)) {
      best = *cand;
      best_entry = &e;
    }
  }
  if (best_entry == nullptr) return std::nullopt;
  return best;
}

std::vector<MentionHit> EntityIndex::scan(std::string_view text) const {
  const std::vector<text::Token> tokens = text::tokenize(text);
  std::vector<MentionHit> hits;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t consumed = 1;
    std::optional<LinkMatch> found;
    const std::size_t longest =
        std::min(options_.max_ngram, tokens.size() - i);
    // Multi-token grams only count when they hit a label exactly.
    for (std::size_t n = longest; n >= 2; --n) {
      auto match = link(join_tokens(tokens, i, n));
      if (match && match->kind == MatchKind::kExact) {
        found = match;
        consumed = n;
        break;
      }
    }
    if (!found) found = link(tokens[i].text);
    if (found) {
      hits.push_back({found->node_id, tokens[i].begin,
                      tokens[i + consumed - 1].end, found->kind});
    }
    i += consumed;
  }
  return hits;
}

std::optional<std::string> link_mention(const CaseGraph& graph,
                                        std::string_view mention) {
  auto match = EntityIndex(graph).link(mention);
  if (!match) return std::nullopt;
  return match->node_id;
}

}  // namespace vsp::graph
