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

#include "vsp/graph/case_graph.h"

#include <array>
#include <tuple>
#include <utility>

namespace vsp::graph {
namespace {

constexpr std::array<std::pair<EntityClass, std::string_view>, 6>
    kEntityClassNames = {{
        {EntityClass::kSymptom, "symptom"},
        {EntityClass::kDisease, "disease"},
        {EntityClass::kMedication, "medication"},
        {EntityClass::kExamination, "examination"},
        {EntityClass::kPersonal, "personal"},
        {EntityClass::kOther, "other"},
    }};

}  // namespace

std::string_view to_string(NodeKind kind) {
  return kind == NodeKind::kEntity ? "entity" : "literal";
}

std::string_view to_string(EntityClass entity_class) {
  for (const auto& [value, name] : kEntityClassNames) {
    if (value == entity_class) return name;
  }
  return "other";
}

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::kScripted ? "scripted" : "fabricated";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "entity") return NodeKind::kEntity;
  if (text == "literal") return NodeKind::kLiteral;
  return std::nullopt;
}

std::optional<EntityClass> parse_entity_class(std::string_view text) {
  for (const auto& [value, name] : kEntityClassNames) {
    if (name == text) return value;
  }
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  if (text == "scripted") return Provenance::kScripted;
  if (text == "fabricated") return Provenance::kFabricated;
  return std::nullopt;
}

bool SpoLess::operator()(const Triple& a, const Triple& b) const {
  return std::tie(a.subject, a.predicate, a.object) <
         std::tie(b.subject, b.predicate, b.object);
}

void PredicatePolicy::declare_single_valued(std::string predicate) {
  multi_.erase(predicate);
  single_.insert(std::move(predicate));
}

void PredicatePolicy::declare_multi_valued(std::string predicate) {
  single_.erase(predicate);
  multi_.insert(std::move(predicate));
}

bool PredicatePolicy::is_single_valued(std::string_view predicate,
                                       NodeKind object_kind) const {
  if (single_.contains(predicate)) return true;
  if (multi_.contains(predicate)) return false;
  return object_kind == NodeKind::kLiteral;
}

CaseGraph::CaseGraph(std::string case_id, PredicatePolicy policy)
    : case_id_(std::move(case_id)), policy_(std::move(policy)) {}

void CaseGraph::add_node(const Node& node) {
  if (node.id.empty()) throw InvalidGraphError("node id is empty");
  if (node.label.empty()) {
    throw InvalidGraphError("node '" + node.id + "' has an empty label");
  }
  auto it = nodes_.find(node.id);
  if (it != nodes_.end()) {
    if (it->second == node) return;
    throw ConflictError("node id '" + node.id +
                        "' is already bound to a different node");
  }
  nodes_.emplace(node.id, node);
}

void CaseGraph::check_insertable(const Triple& triple, const Node& subject,
                                 const Node& object) const {
  if (triple.predicate.empty()) throw InvalidGraphError("empty predicate");
  if (subject.kind == NodeKind::kLiteral) {
    throw InvalidGraphError("literal node '" + subject.id +
                            "' cannot be a triple subject");
  }
  if (!policy_.is_single_valued(triple.predicate, object.kind)) return;
  for (auto it = triples_.lower_bound(Triple{triple.subject, triple.predicate,
                                             std::string()});
       it != triples_.end() && it->subject == triple.subject &&
       it->predicate == triple.predicate;
       ++it) {
    if (it->object != triple.object) {
      throw ConflictError("single-valued predicate '" + triple.predicate +
                          "' of '" + triple.subject + "' already has object '" +
                          it->object + "'");
    }
  }
}

bool CaseGraph::insert_triple(const Triple& triple) {
  const Node* subject = find_node(triple.subject);
  if (subject == nullptr) throw UnknownNodeError(triple.subject);
  const Node* object = find_node(triple.object);
  if (object == nullptr) throw UnknownNodeError(triple.object);
  if (contains(triple)) return false;
  check_insertable(triple, *subject, *object);
  triples_.insert(triple);
  return true;
}

bool CaseGraph::insert_triple(const Node& subject, std::string predicate,
                              const Node& object, Provenance provenance) {
  CaseGraph staged = *this;
  staged.add_node(subject);
  staged.add_node(object);
  const bool inserted = staged.insert_triple(
      Triple{subject.id, std::move(predicate), object.id, provenance});
  *this = std::move(staged);
  return inserted;
}

const Node* CaseGraph::find_node(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

bool CaseGraph::contains(const Triple& triple) const {
  return triples_.contains(triple);
}

std::vector<Triple> CaseGraph::triples_with_subject(
    std::string_view subject) const {
  std::vector<Triple> out;
  for (auto it = triples_.lower_bound(
           Triple{std::string(subject), std::string(), std::string()});
       it != triples_.end() && it->subject == subject; ++it) {
    out.push_back(*it);
  }
  return out;
}

std::vector<std::string> CaseGraph::objects_of(
    std::string_view subject, std::string_view predicate) const {
  std::vector<std::string> out;
  for (auto it = triples_.lower_bound(Triple{
           std::string(subject), std::string(predicate), std::string()});
       it != triples_.end() && it->subject == subject &&
       it->predicate == predicate;
       ++it) {
    out.push_back(it->object);
  }
  return out;
}

std::vector<std::string> CaseGraph::validate() const {
  std::vector<std::string> problems;
  std::set<std::string, std::less<>> literal_objects;
  for (const auto& [id, node] : nodes_) {
    if (id != node.id) problems.push_back("node key mismatch for '" + id + "'");
    if (node.label.empty()) problems.push_back("empty label on '" + id + "'");
  }
  for (const Triple& t : triples_) {
    const Node* s = find_node(t.subject);
    const Node* o = find_node(t.object);
    if (s == nullptr) problems.push_back("dangling subject '" + t.subject + "'");
    if (o == nullptr) problems.push_back("dangling object '" + t.object + "'");
    if (s != nullptr && s->kind == NodeKind::kLiteral) {
      problems.push_back("literal subject '" + t.subject + "'");
    }
    if (o != nullptr && o->kind == NodeKind::kLiteral) {
      literal_objects.insert(t.object);
    }
  }
  for (const auto& [id, node] : nodes_) {
    if (node.kind == NodeKind::kLiteral && !literal_objects.contains(id)) {
      problems.push_back("literal '" + id + "' is not the object of a triple");
    }
  }
  return problems;
}

bool operator==(const CaseGraph& a, const CaseGraph& b) {
  return a.case_id_ == b.case_id_ && a.nodes_ == b.nodes_ &&
         std::equal(a.triples_.begin(), a.triples_.end(), b.triples_.begin(),
                    b.triples_.end());
}

CaseGraph with_triple(CaseGraph graph, const Triple& triple) {
  graph.insert_triple(triple);
  return graph;
}

CaseGraph merge(const CaseGraph& base, const CaseGraph& overlay) {
  CaseGraph merged = base;
  for (const auto& [id, node] : overlay.nodes()) merged.add_node(node);
  for (const Triple& t : overlay.triples()) merged.insert_triple(t);
  return merged;
}

CaseGraph subgraph_of(const CaseGraph& graph,
                      const std::vector<Triple>& triples) {
  CaseGraph out(graph.case_id(), graph.policy());
  for (const Triple& t : triples) {
    const Node* s = graph.find_node(t.subject);
    const Node* o = graph.find_node(t.object);
    if (s == nullptr) throw UnknownNodeError(t.subject);
    if (o == nullptr) throw UnknownNodeError(t.object);
    out.add_node(*s);
    out.add_node(*o);
  }
  for (const Triple& t : triples) out.insert_triple(t);
  return out;
}

CaseGraph neighborhood(const CaseGraph& graph, std::string_view node_id,
                       int radius) {
  const Node* centre = graph.find_node(node_id);
  if (centre == nullptr) throw UnknownNodeError(std::string(node_id));
  if (radius < 1 || radius > 2) {
    throw std::invalid_argument("neighborhood radius must be 1 or 2");
  }
  // Breadth-first over the undirected view: triples touching the frontier
  // are collected, and their far endpoints form the next frontier.
  std::set<std::string, std::less<>> visited = {std::string(node_id)};
  std::set<std::string, std::less<>> frontier = visited;
  std::vector<Triple> collected;
  std::set<Triple, SpoLess> seen;
  for (int hop = 0; hop < radius; ++hop) {
    std::set<std::string, std::less<>> next;
    for (const Triple& t : graph.triples()) {
      const bool from_subject = frontier.contains(t.subject);
      const bool from_object = frontier.contains(t.object);
      if (!from_subject && !from_object) continue;
      if (seen.insert(t).second) collected.push_back(t);
      for (const std::string* end : {&t.subject, &t.object}) {
        if (!visited.contains(*end)) next.insert(*end);
      }
    }
    visited.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  CaseGraph out = subgraph_of(graph, collected);
  out.add_node(*centre);
  return out;
}

}  // namespace vsp::graph
