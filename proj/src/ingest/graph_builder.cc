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

#include "vsp/ingest/graph_builder.h"

#include <set>
#include <stdexcept>

#include "vsp/common/text.h"

namespace vsp::ingest {
namespace {

using graph::CaseGraph;
using graph::EntityClass;
using graph::Node;
using graph::NodeKind;

Node patient_node() {
  return Node{std::string(kPatientId), "patient", NodeKind::kEntity,
              EntityClass::kPersonal};
}

bool is_patient(std::string_view mention) {
  return text::normalize_utf8(mention) == kPatientMention;
}

void add_attribute(CaseGraph& g, const std::string& subject_id,
                   const std::string& predicate, const std::string& value) {
  g.insert_triple(*g.find_node(subject_id), predicate,
                  Node{literal_id(subject_id, predicate, value), value,
                       NodeKind::kLiteral, std::nullopt});
}

std::set<std::string> reachable_from_patient(const CaseGraph& g) {
  std::set<std::string> seen = {std::string(kPatientId)};
  std::vector<std::string> stack = {std::string(kPatientId)};
  while (!stack.empty()) {
    const std::string cur = stack.back();
    stack.pop_back();
    for (const graph::Triple& t : g.triples_with_subject(cur)) {
      if (seen.insert(t.object).second) stack.push_back(t.object);
    }
  }
  return seen;
}

}  // namespace

std::string entity_id(std::string_view mention) {
  const std::string folded = text::normalize_utf8(mention);
  std::string out;
  out.reserve(folded.size());
  for (char c : folded) out.push_back(c == ' ' ? '_' : c);
  return out;
}

std::string literal_id(std::string_view subject_id, std::string_view predicate,
                       std::string_view value) {
  return "lit:" + std::string(subject_id) + "/" + std::string(predicate) + "/" +
         std::string(value);
}

CaseGraph build_case_graph(const CaseScript& script,
                           const std::vector<ExtractionResult>& results,
                           graph::PredicatePolicy policy) {
  if (results.size() != script.sections.size()) {
    throw std::invalid_argument("need one extraction result per section");
  }
  CaseGraph g(script.case_id, std::move(policy));
  g.add_node(patient_node());
  for (const auto& [key, value] : script.profile) {
    const std::string v = text::trim(value);
    if (v.empty()) continue;
    add_attribute(g, std::string(kPatientId), entity_id(key), v);
  }

  // Mention text -> node id, across all sections.
  auto resolve = [&](const std::string& mention) -> std::string {
    if (is_patient(mention)) return std::string(kPatientId);
    const std::string id = entity_id(mention);
    if (!g.has_node(id)) {
      throw std::invalid_argument("mention '" + mention + "' was not extracted");
    }
    return id;
  };

  std::vector<std::string> entity_order;
  for (const ExtractionResult& r : results) {
    for (const EntityMention& e : r.entities) {
      if (is_patient(e.mention)) continue;
      const std::string id = entity_id(e.mention);
      if (id.empty()) continue;
      if (!g.has_node(id)) {
        g.add_node(Node{id, text::trim(e.mention), NodeKind::kEntity, e.entity_class});
        entity_order.push_back(id);
      }
    }
  }
  for (const ExtractionResult& r : results) {
    for (const RelationMention& rel : r.relations) {
      g.insert_triple(graph::Triple{resolve(rel.head), rel.predicate,
                                    resolve(rel.tail)});
    }
    for (const AttributeMention& a : r.attributes) {
      add_attribute(g, resolve(a.entity), a.attribute, text::trim(a.value));
    }
  }

  std::set<std::string> reached = reachable_from_patient(g);
  for (const std::string& id : entity_order) {
    if (reached.contains(id)) continue;
    const Node& node = *g.find_node(id);
    g.insert_triple(graph::Triple{
        std::string(kPatientId),
        std::string(default_relation(node.entity_class.value_or(EntityClass::kOther))),
        id});
    reached = reachable_from_patient(g);
  }
  return g;
}

CaseGraph ingest_case(const CaseScript& script, const Extractor& extractor,
                      graph::PredicatePolicy policy) {
  std::vector<ExtractionResult> results;
  results.reserve(script.sections.size());
  for (const Section& s : script.sections) results.push_back(extractor.extract(s.body));
  return build_case_graph(script, results, std::move(policy));
}

}  // namespace vsp::ingest
