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

#include <random>
#include <string>
#include <vector>

#include "vsp/graph/case_graph.h"
#include "vsp/graph/query.h"

// Seeded generators for property tests over graphs and queries.
namespace vsp::testing {

inline std::size_t uniform(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Labels deliberately collide across ids so label-matching constants can
// hit several nodes. Some labels need escaping in files and quoting in
// queries.
inline graph::CaseGraph random_graph(std::mt19937_64& rng,
                                     std::size_t max_triples) {
  static const std::vector<std::string> kLabels = {
      "cough", "fever", "chest pain", "patient", "咳嗽", "a\tb", "x.y.",
      "back\\slash", "{brace}", "say \"hi\""};
  static const std::vector<std::string> kRelations = {
      "has_symptom", "related_to", "takes_medication"};
  static const std::vector<std::string> kAttributes = {"duration", "severity",
                                                       "body_temperature"};
  static const std::vector<std::string> kValues = {"3 days", "38.5", "mild",
                                                   "3 days", "高"};

  graph::CaseGraph g("case-" + std::to_string(uniform(rng, 1000)));
  const std::size_t entities = 1 + uniform(rng, 12);
  for (std::size_t i = 0; i < entities; ++i) {
    graph::Node n;
    n.id = "e" + std::to_string(i);
    n.label = kLabels[uniform(rng, kLabels.size())];
    n.kind = graph::NodeKind::kEntity;
    if (uniform(rng, 4) != 0) {
      n.entity_class = static_cast<graph::EntityClass>(uniform(rng, 6));
    }
    g.add_node(n);
  }
  const std::size_t target = uniform(rng, max_triples + 1);
  std::size_t literal_counter = 0;
  for (std::size_t attempt = 0; attempt < target * 2 && g.triple_count() < target;
       ++attempt) {
    const std::string subject = "e" + std::to_string(uniform(rng, entities));
    try {
      if (uniform(rng, 2) == 0) {
        g.insert_triple(graph::Triple{
            subject, kRelations[uniform(rng, kRelations.size())],
            "e" + std::to_string(uniform(rng, entities)),
            uniform(rng, 3) == 0 ? graph::Provenance::kFabricated
                                 : graph::Provenance::kScripted});
      } else {
        graph::Node lit;
        lit.id = "l" + std::to_string(literal_counter++);
        lit.label = kValues[uniform(rng, kValues.size())];
        lit.kind = graph::NodeKind::kLiteral;
        g.insert_triple(*g.find_node(subject),
                        kAttributes[uniform(rng, kAttributes.size())], lit,
                        uniform(rng, 3) == 0 ? graph::Provenance::kFabricated
                                             : graph::Provenance::kScripted);
      }
    } catch (const graph::ConflictError&) {
      // single-valued attribute already set; try another triple
    }
  }
  return g;
}

inline graph::Term random_term(std::mt19937_64& rng, const graph::CaseGraph& g,
                               bool predicate_position) {
  static const std::vector<std::string> kVars = {"a", "b", "c", "d"};
  if (uniform(rng, 2) == 0) return graph::Term::variable(kVars[uniform(rng, 4)]);
  if (predicate_position) {
    static const std::vector<std::string> kPreds = {
        "has_symptom", "related_to", "duration", "severity", "missing_pred"};
    return graph::Term::constant(kPreds[uniform(rng, kPreds.size())]);
  }
  const auto& nodes = g.nodes();
  if (nodes.empty() || uniform(rng, 5) == 0) return graph::Term::constant("nowhere");
  auto it = nodes.begin();
  std::advance(it, static_cast<long>(uniform(rng, nodes.size())));
  return graph::Term::constant(uniform(rng, 2) == 0 ? it->second.id
                                                    : it->second.label);
}

inline graph::Query random_query(std::mt19937_64& rng, const graph::CaseGraph& g,
                                 std::size_t max_patterns) {
  graph::Query q;
  const std::size_t n = 1 + uniform(rng, max_patterns);
  for (std::size_t i = 0; i < n; ++i) {
    q.patterns.push_back({random_term(rng, g, false), random_term(rng, g, true),
                          random_term(rng, g, false)});
  }
  std::vector<std::string> vars;
  for (const auto& p : q.patterns) {
    for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
      if (t->is_variable() &&
          std::find(vars.begin(), vars.end(), t->text) == vars.end()) {
        vars.push_back(t->text);
      }
    }
  }
  for (const std::string& v : vars) {
    if (uniform(rng, 3) != 0) q.select.push_back(v);
  }
  return q;
}

}  // namespace vsp::testing
