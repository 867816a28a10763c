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

#include "vsp/ingest/extraction.h"

#include <set>
#include <stdexcept>

#include "vsp/common/text.h"

namespace vsp::ingest {

std::string_view default_relation(graph::EntityClass entity_class) {
  switch (entity_class) {
    case graph::EntityClass::kSymptom: return "has_symptom";
    case graph::EntityClass::kDisease: return "has_disease";
    case graph::EntityClass::kMedication: return "takes_medication";
    case graph::EntityClass::kExamination: return "underwent_exam";
    case graph::EntityClass::kPersonal:
    case graph::EntityClass::kOther: return "related_to";
  }
  return "related_to";
}

void validate(const ExtractionResult& result, std::string_view source) {
  const std::size_t length = text::code_point_count(source);
  std::set<std::string> known = {std::string(kPatientMention)};
  for (const EntityMention& e : result.entities) {
    if (e.mention.empty()) throw std::invalid_argument("empty entity mention");
    if (e.span.begin > e.span.end || e.span.end > length) {
      throw std::invalid_argument("span of '" + e.mention +
                                  "' lies outside the text");
    }
    known.insert(e.mention);
  }
  for (const RelationMention& r : result.relations) {
    if (!known.contains(r.head) || !known.contains(r.tail)) {
      throw std::invalid_argument("relation " + r.head + " " + r.predicate +
                                  " " + r.tail + " uses an unknown entity");
    }
    if (r.predicate.empty()) throw std::invalid_argument("empty predicate");
  }
  for (const AttributeMention& a : result.attributes) {
    if (!known.contains(a.entity)) {
      throw std::invalid_argument("attribute " + a.attribute +
                                  " names unknown entity '" + a.entity + "'");
    }
    if (a.attribute.empty() || a.value.empty()) {
      throw std::invalid_argument("empty attribute name or value");
    }
  }
}

}  // namespace vsp::ingest
