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

#include "vsp/ingest/lexicon.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vsp/common/text.h"

namespace vsp::ingest {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::invalid_argument line_error(std::size_t line, const std::string& message) {
  return std::invalid_argument("line " + std::to_string(line) + ": " + message);
}

}  // namespace

Lexicon::Lexicon(std::vector<LexiconEntry> entries) {
  for (LexiconEntry& e : entries) add(std::move(e));
}

void Lexicon::add(LexiconEntry entry) {
  entry.label = text::trim(entry.label);
  if (entry.label.empty()) throw std::invalid_argument("empty lexicon label");
  const std::string folded = text::normalize_utf8(entry.label);
  for (const LexiconEntry& e : entries_) {
    if (text::normalize_utf8(e.label) == folded) return;
  }
  entries_.push_back(std::move(entry));
}

Lexicon Lexicon::from_tsv(std::string_view text) {
  Lexicon lexicon;
  std::size_t line_no = 0;
  for (std::string line : text::split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.starts_with("#")) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw line_error(line_no, "expected label<TAB>class");
    const auto cls = graph::parse_entity_class(text::trim(fields[1]));
    if (!cls) throw line_error(line_no, "unknown entity class '" + fields[1] + "'");
    if (text::normalize_utf8(fields[0]) == "patient") {
      throw line_error(line_no, "'patient' is reserved");
    }
    lexicon.add({fields[0], *cls});
  }
  return lexicon;
}

Lexicon Lexicon::from_file(const std::string& path) { return from_tsv(slurp(path)); }

AttributePattern make_attribute_pattern(std::string attribute,
                                        AttributePattern::Anchor anchor,
                                        std::string value_format,
                                        std::string regex_source) {
  AttributePattern p;
  p.attribute = std::move(attribute);
  p.anchor = anchor;
  p.value_format = std::move(value_format);
  p.regex_source = std::move(regex_source);
  try {
    p.regex = std::regex(p.regex_source, std::regex::ECMAScript | std::regex::icase);
  } catch (const std::regex_error& e) {
    throw std::invalid_argument("bad attribute pattern '" + p.regex_source +
                                "': " + e.what());
  }
  return p;
}

std::vector<AttributePattern> default_attribute_patterns() {
  using A = AttributePattern::Anchor;
  std::vector<AttributePattern> out;
  out.push_back(make_attribute_pattern(
      "body_temperature", A::kPatient, "$1",
      R"(\b(?:body temperature|temperature|temp)\b[^0-9.;\n]{0,12}(\d{2}(?:\.\d+)?))"));
  out.push_back(make_attribute_pattern("body_temperature", A::kPatient, "$1",
                                       R"(体温[^0-9;。\n]{0,4}(\d{2}(?:\.\d+)?))"));
  out.push_back(make_attribute_pattern(
      "blood_pressure", A::kPatient, "$1/$2",
      R"(\b(?:blood pressure|bp)\b[^0-9;\n]{0,12}(\d{2,3})\s*/\s*(\d{2,3}))"));
  out.push_back(make_attribute_pattern("blood_pressure", A::kPatient, "$1/$2",
                                       R"(血压[^0-9;。\n]{0,4}(\d{2,3})\s*/\s*(\d{2,3}))"));
  out.push_back(make_attribute_pattern(
      "heart_rate", A::kPatient, "$1",
      R"(\b(?:heart rate|pulse)\b[^0-9;\n]{0,12}(\d{2,3}))"));
  out.push_back(make_attribute_pattern(
      "weight", A::kPatient, "$1 $2",
      R"(\b(?:weight|weighs)\b[^0-9;\n]{0,12}(\d+(?:\.\d+)?)\s*(kg|lb)s?\b)"));
  out.push_back(make_attribute_pattern(
      "duration", A::kNearestEntity, "$1 $2",
      R"(\b(\d+)\s*(hours?|days?|weeks?|months?|years?)\b)"));
  out.push_back(make_attribute_pattern("duration", A::kNearestEntity, "$1$2",
                                       R"((\d+)\s*(小时|天|周|个月|年))"));
  return out;
}

std::vector<AttributePattern> parse_attribute_patterns(std::string_view text) {
  std::vector<AttributePattern> out;
  std::size_t line_no = 0;
  for (std::string line : text::split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.starts_with("#")) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 4) {
      throw line_error(line_no, "expected attribute<TAB>anchor<TAB>format<TAB>regex");
    }
    AttributePattern::Anchor anchor;
    if (fields[1] == "patient") {
      anchor = AttributePattern::Anchor::kPatient;
    } else if (fields[1] == "entity") {
      anchor = AttributePattern::Anchor::kNearestEntity;
    } else {
      throw line_error(line_no, "anchor must be 'patient' or 'entity'");
    }
    try {
      out.push_back(make_attribute_pattern(fields[0], anchor, fields[2], fields[3]));
    } catch (const std::invalid_argument& e) {
      throw line_error(line_no, e.what());
    }
  }
  return out;
}

std::vector<AttributePattern> read_attribute_patterns(const std::string& path) {
  return parse_attribute_patterns(slurp(path));
}

}  // namespace vsp::ingest
