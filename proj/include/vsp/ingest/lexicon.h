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

#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "vsp/graph/case_graph.h"

namespace vsp::ingest {

struct LexiconEntry {
  std::string label;
  graph::EntityClass entity_class = graph::EntityClass::kOther;
};

// Dictionary file: one term per line, "label<TAB>entity_class". Blank lines
// and lines starting with '#' are skipped.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  // Throws std::invalid_argument naming the line.
  static Lexicon from_tsv(std::string_view text);
  static Lexicon from_file(const std::string& path);

  // Later duplicates of a label (case-insensitive) are ignored.
  void add(LexiconEntry entry);
  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<LexiconEntry> entries_;
};

struct AttributePattern {
  enum class Anchor { kPatient, kNearestEntity };

  std::string attribute;
  Anchor anchor = Anchor::kPatient;
  // Rendered with std::match_results::format ("$1 $2").
  std::string value_format;
  std::string regex_source;
  std::regex regex;
};

// Compiles case-insensitive ECMAScript; throws std::invalid_argument.
AttributePattern make_attribute_pattern(std::string attribute,
                                        AttributePattern::Anchor anchor,
                                        std::string value_format,
                                        std::string regex_source);

// Body temperature, blood pressure, heart rate, weight and durations, in
// English and Chinese.
std::vector<AttributePattern> default_attribute_patterns();

// "attribute<TAB>anchor<TAB>value_format<TAB>regex", anchor one of
// "patient" or "entity".
std::vector<AttributePattern> parse_attribute_patterns(std::string_view text);
std::vector<AttributePattern> read_attribute_patterns(const std::string& path);

}  // namespace vsp::ingest
