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

#include "vsp/ingest/rule_extractor.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "vsp/common/text.h"

namespace vsp::ingest {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c == '_';
}

bool bounded(std::string_view text, std::size_t begin, std::size_t end) {
  if (begin > 0 && is_word_byte(static_cast<unsigned char>(text[begin - 1]))) {
    return false;
  }
  return end >= text.size() || !is_word_byte(static_cast<unsigned char>(text[end]));
}

// Sentence number for every byte offset.
std::vector<std::size_t> sentence_ids(std::string_view text) {
  static const std::vector<std::string_view> kCjkStops = {"。", "；", "！", "？"};
  std::vector<std::size_t> ids(text.size() + 1, 0);
  std::size_t current = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    ids[i] = current;
    const char c = text[i];
    bool stop = c == ';' || c == '!' || c == '?' || c == '\n';
    if (c == '.') {
      const bool digit_before =
          i > 0 && text[i - 1] >= '0' && text[i - 1] <= '9';
      const bool digit_after =
          i + 1 < text.size() && text[i + 1] >= '0' && text[i + 1] <= '9';
      stop = !(digit_before && digit_after);
    }
    for (std::string_view s : kCjkStops) {
      if (text.substr(i, s.size()) == s) stop = true;
    }
    if (stop) ++current;
  }
  ids[text.size()] = current;
  return ids;
}

struct Occurrence {
  std::size_t begin;
  std::size_t end;
  std::size_t entry;
};

}  // namespace

RuleBasedExtractor::RuleBasedExtractor(Lexicon lexicon,
                                       std::vector<AttributePattern> patterns)
    : patterns_(std::move(patterns)) {
  for (const LexiconEntry& e : lexicon.entries()) {
    entries_.push_back({text::to_lower_ascii(e.label), e, text::contains_cjk(e.label)});
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.folded.size() > b.folded.size();
                   });
}

ExtractionResult RuleBasedExtractor::extract(std::string_view text) const {
  ExtractionResult result;
  if (text.empty()) return result;
  const std::string folded = text::to_lower_ascii(text);

  std::vector<Occurrence> candidates;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    for (std::size_t pos = folded.find(e.folded); pos != std::string::npos;
         pos = folded.find(e.folded, pos + 1)) {
      const std::size_t end = pos + e.folded.size();
      if (e.cjk || bounded(folded, pos, end)) candidates.push_back({pos, end, i});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Occurrence& a, const Occurrence& b) {
              return std::tuple(a.begin, b.end, a.entry) <
                     std::tuple(b.begin, a.end, b.entry);
            });
  std::vector<Occurrence> chosen;
  std::size_t last_end = 0;
  for (const Occurrence& o : candidates) {
    if (o.begin < last_end) continue;
    chosen.push_back(o);
    last_end = o.end;
  }

  std::set<std::string> seen;
  for (const Occurrence& o : chosen) {
    const LexiconEntry& entry = entries_[o.entry].entry;
    if (!seen.insert(entry.label).second) continue;
    result.entities.push_back(
        {entry.label,
         {text::code_point_offset(text, o.begin), text::code_point_offset(text, o.end)},
         entry.entity_class});
    result.relations.push_back({std::string(kPatientMention),
                                std::string(default_relation(entry.entity_class)),
                                entry.label});
  }

  const std::vector<std::size_t> sentence = sentence_ids(text);
  struct Hit {
    std::size_t position;
    std::size_t pattern;
    AttributeMention attribute;
  };
  std::vector<Hit> hits;
  const std::string owned(text);
  for (std::size_t pi = 0; pi < patterns_.size(); ++pi) {
    const AttributePattern& p = patterns_[pi];
    for (auto it = std::sregex_iterator(owned.begin(), owned.end(), p.regex);
         it != std::sregex_iterator(); ++it) {
      const std::smatch& m = *it;
      const std::size_t at = static_cast<std::size_t>(m.position(0));
      std::string anchor(kPatientMention);
      if (p.anchor == AttributePattern::Anchor::kNearestEntity) {
        std::size_t best_end = 0;
        for (const Occurrence& o : chosen) {
          if (o.end <= at && sentence[o.begin] == sentence[at] && o.end >= best_end) {
            best_end = o.end;
            anchor = entries_[o.entry].entry.label;
          }
        }
      }
      const std::string value = text::trim(m.format(p.value_format));
      if (value.empty()) continue;
      hits.push_back({at, pi, {anchor, p.attribute, value}});
    }
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return std::tie(a.position, a.pattern) < std::tie(b.position, b.pattern);
  });
  for (Hit& h : hits) {
    if (std::find(result.attributes.begin(), result.attributes.end(),
                  h.attribute) == result.attributes.end()) {
      result.attributes.push_back(std::move(h.attribute));
    }
  }
  return result;
}

}  // namespace vsp::ingest
