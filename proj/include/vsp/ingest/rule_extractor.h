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

#include <vector>

#include "vsp/ingest/extraction.h"
#include "vsp/ingest/lexicon.h"

namespace vsp::ingest {

// Dictionary and pattern extractor.
//
// Entities: leftmost-longest lexicon matches, case-insensitive, bounded by
// non-word characters for Latin labels. Each label is reported once, at its
// first occurrence, and linked from the patient by its class relation.
// Attributes: every pattern match; entity-anchored patterns attach to the
// closest entity ending before the match in the same sentence, else to the
// patient.
class RuleBasedExtractor : public Extractor {
 public:
  explicit RuleBasedExtractor(
      Lexicon lexicon,
      std::vector<AttributePattern> patterns = default_attribute_patterns());

  ExtractionResult extract(std::string_view text) const override;

 private:
  struct Entry {
    std::string folded;
    LexiconEntry entry;
    bool cjk = false;
  };

  std::vector<Entry> entries_;  // longest folded label first
  std::vector<AttributePattern> patterns_;
};

}  // namespace vsp::ingest
