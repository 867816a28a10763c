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
#include <vector>

#include "vsp/graph/case_graph.h"

namespace vsp::ingest {

// The implicit subject of every case; never a dictionary entry.
inline constexpr std::string_view kPatientMention = "patient";

// Code-point offsets into the extracted text, half open.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct EntityMention {
  std::string mention;
  Span span;
  graph::EntityClass entity_class = graph::EntityClass::kOther;

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

struct RelationMention {
  std::string head;  // an entity mention or kPatientMention
  std::string predicate;
  std::string tail;

  friend bool operator==(const RelationMention&, const RelationMention&) = default;
};

struct AttributeMention {
  std::string entity;  // an entity mention or kPatientMention
  std::string attribute;
  std::string value;

  friend bool operator==(const AttributeMention&, const AttributeMention&) = default;
};

struct ExtractionResult {
  std::vector<EntityMention> entities;
  std::vector<RelationMention> relations;
  std::vector<AttributeMention> attributes;

  bool empty() const {
    return entities.empty() && relations.empty() && attributes.empty();
  }
  friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

// Throws std::invalid_argument when a span leaves the source text or a
// relation/attribute names an entity that was not extracted.
void validate(const ExtractionResult& result, std::string_view source);

class Extractor {
 public:
  virtual ~Extractor() = default;
  virtual ExtractionResult extract(std::string_view text) const = 0;
};

// Relation linking the patient to an entity of the given class.
std::string_view default_relation(graph::EntityClass entity_class);

}  // namespace vsp::ingest
