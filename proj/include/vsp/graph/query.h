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

// Conjunctive triple-pattern queries:
//
//   SELECT ?d WHERE { patient has_symptom ?s . ?s duration ?d }
//
// Node constants match a node whose id or label equals the text; predicate
// constants match the predicate token exactly. Variables bind to node ids in
// subject/object position and to predicate tokens in predicate position.
namespace vsp::graph {

inline constexpr std::size_t kMaxPatterns = 4;

struct Term {
  enum class Kind { kConstant, kVariable };

  Kind kind = Kind::kConstant;
  // Variable names are stored without the leading '?'.
  std::string text;

  static Term constant(std::string text) {
    return {Kind::kConstant, std::move(text)};
  }
  static Term variable(std::string name) {
    return {Kind::kVariable, std::move(name)};
  }
  bool is_variable() const { return kind == Kind::kVariable; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct Query {
  std::vector<std::string> select;  // may be empty: boolean "ask"
  std::vector<TriplePattern> patterns;

  friend bool operator==(const Query&, const Query&) = default;
};

class QueryError : public GraphError {
 public:
  using GraphError::GraphError;
};

class ParseError : public QueryError {
 public:
  ParseError(std::size_t position, const std::string& message)
      : QueryError("query parse error at " + std::to_string(position) + ": " +
                   message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnboundVariableError : public QueryError {
 public:
  explicit UnboundVariableError(const std::string& name)
      : QueryError("selected variable ?" + name + " occurs in no pattern"),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Throws UnboundVariableError for selected variables that occur in no
// pattern and QueryError for a pattern count outside 1..kMaxPatterns.
void validate(const Query& query);

Query parse_query(std::string_view text);
std::string unparse(const Query& query);

struct QueryResult {
  std::vector<std::string> variables;
  // Distinct projections, sorted lexicographically; each row is aligned
  // with `variables`.
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

QueryResult execute_query(const CaseGraph& graph, const Query& query);

// Triples that take part in at least one full solution, in canonical order.
std::vector<Triple> matched_triples(const CaseGraph& graph, const Query& query);
CaseGraph matched_subgraph(const CaseGraph& graph, const Query& query);

}  // namespace vsp::graph
