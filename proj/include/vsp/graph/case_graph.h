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
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vsp::graph {

enum class NodeKind { kEntity, kLiteral };

enum class EntityClass {
  kSymptom,
  kDisease,
  kMedication,
  kExamination,
  kPersonal,
  kOther,
};

enum class Provenance { kScripted, kFabricated };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EntityClass entity_class);
std::string_view to_string(Provenance provenance);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<EntityClass> parse_entity_class(std::string_view text);
std::optional<Provenance> parse_provenance(std::string_view text);

struct Node {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::kEntity;
  std::optional<EntityClass> entity_class;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;
  Provenance provenance = Provenance::kScripted;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Orders by (subject, predicate, object); provenance is not part of the key.
struct SpoLess {
  bool operator()(const Triple& a, const Triple& b) const;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A single-valued predicate would gain a second distinct object, or a node
// id was reused with different content.
class ConflictError : public GraphError {
 public:
  using GraphError::GraphError;
};

class UnknownNodeError : public GraphError {
 public:
  explicit UnknownNodeError(const std::string& id)
      : GraphError("unknown node '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// Structural invariant violation (empty label, literal used as subject...).
class InvalidGraphError : public GraphError {
 public:
  using GraphError::GraphError;
};

// Attribute predicates (literal objects) are single-valued and relation
// predicates multi-valued unless declared otherwise.
class PredicatePolicy {
 public:
  void declare_single_valued(std::string predicate);
  void declare_multi_valued(std::string predicate);
  bool is_single_valued(std::string_view predicate,
                        NodeKind object_kind) const;

 private:
  std::set<std::string, std::less<>> single_;
  std::set<std::string, std::less<>> multi_;
};

// Triple store for one case. A regular value type: copies are independent
// graphs, and a const graph is safe to share across threads.
class CaseGraph {
 public:
  using NodeMap = std::map<std::string, Node, std::less<>>;
  using TripleSet = std::set<Triple, SpoLess>;

  CaseGraph() = default;
  explicit CaseGraph(std::string case_id, PredicatePolicy policy = {});

  const std::string& case_id() const { return case_id_; }
  void set_case_id(std::string case_id) { case_id_ = std::move(case_id); }
  const PredicatePolicy& policy() const { return policy_; }

  // Idempotent for an identical node. Throws ConflictError when the id is
  // already bound to a different node and InvalidGraphError for an empty id
  // or label.
  void add_node(const Node& node);

  // Returns false when a triple with the same (s, p, o) already exists.
  // Throws UnknownNodeError for a dangling endpoint, InvalidGraphError for
  // a literal subject, ConflictError for a single-valued clash.
  bool insert_triple(const Triple& triple);

  // Adds both endpoints and the triple with the strong guarantee: on any
  // error the graph is unchanged.
  bool insert_triple(const Node& subject, std::string predicate,
                     const Node& object,
                     Provenance provenance = Provenance::kScripted);

  const Node* find_node(std::string_view id) const;
  bool contains(const Triple& triple) const;
  bool has_node(std::string_view id) const { return find_node(id) != nullptr; }

  const NodeMap& nodes() const { return nodes_; }
  const TripleSet& triples() const { return triples_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t triple_count() const { return triples_.size(); }
  bool empty() const { return nodes_.empty(); }

  std::vector<Triple> triples_with_subject(std::string_view subject) const;
  std::vector<std::string> objects_of(std::string_view subject,
                                      std::string_view predicate) const;

  // Every invariant violation found, as human-readable messages.
  std::vector<std::string> validate() const;

  friend bool operator==(const CaseGraph& a, const CaseGraph& b);

 private:
  void check_insertable(const Triple& triple, const Node& subject,
                        const Node& object) const;

  std::string case_id_;
  PredicatePolicy policy_;
  NodeMap nodes_;
  TripleSet triples_;
};

CaseGraph with_triple(CaseGraph graph, const Triple& triple);

// Union of `base` and `overlay`; overlay triples go through the same
// conflict rules as any insert.
CaseGraph merge(const CaseGraph& base, const CaseGraph& overlay);

// Triples reachable within `radius` hops of `node_id` (edges undirected),
// plus their endpoints and the centre node. radius must be 1 or 2.
CaseGraph neighborhood(const CaseGraph& graph, std::string_view node_id,
                       int radius);

// Subgraph made of the given triples and their endpoints.
CaseGraph subgraph_of(const CaseGraph& graph,
                      const std::vector<Triple>& triples);

}  // namespace vsp::graph
