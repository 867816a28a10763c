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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "support/random_graph.h"

namespace vsp::graph {
namespace {

Node entity(std::string id, std::optional<EntityClass> cls = std::nullopt) {
  Node n{id, id, NodeKind::kEntity, cls};
  return n;
}

Node literal(std::string id, std::string label) {
  return Node{std::move(id), std::move(label), NodeKind::kLiteral, std::nullopt};
}

CaseGraph cough_graph() {
  CaseGraph g("c1");
  g.insert_triple(entity("patient", EntityClass::kPersonal), "has_symptom",
                  entity("cough", EntityClass::kSymptom));
  g.insert_triple(entity("cough", EntityClass::kSymptom), "duration",
                  literal("d1", "3 days"));
  return g;
}

TEST(CaseGraphTest, InsertIntoSkeleton) {
  CaseGraph g("c1");
  g.add_node(entity("patient"));
  g.add_node(entity("cough"));
  EXPECT_TRUE(g.insert_triple(Triple{"patient", "has_symptom", "cough"}));
  EXPECT_EQ(g.triple_count(), 1u);
}

TEST(CaseGraphTest, DuplicateInsertIsIdempotent) {
  CaseGraph g = cough_graph();
  EXPECT_FALSE(g.insert_triple(Triple{"patient", "has_symptom", "cough"}));
  // A fabricated copy of a scripted fact does not replace it.
  EXPECT_FALSE(g.insert_triple(
      Triple{"patient", "has_symptom", "cough", Provenance::kFabricated}));
  EXPECT_EQ(g.triple_count(), 2u);
  EXPECT_EQ(g.triples().begin()->provenance, Provenance::kScripted);
}

TEST(CaseGraphTest, SecondTemperatureValueConflicts) {
  CaseGraph g("c1");
  g.insert_triple(entity("patient"), "body_temperature", literal("t1", "38.5"));
  const CaseGraph before = g;
  EXPECT_THROW(g.insert_triple(entity("patient"), "body_temperature",
                               literal("t2", "39.0")),
               ConflictError);
  // Strong guarantee: the literal node was not added either.
  EXPECT_EQ(g, before);
  EXPECT_EQ(g.find_node("t2"), nullptr);
}

TEST(CaseGraphTest, RelationsAreMultiValuedByDefault) {
  CaseGraph g("c1");
  g.insert_triple(entity("patient"), "has_symptom", entity("cough"));
  EXPECT_NO_THROW(g.insert_triple(entity("patient"), "has_symptom",
                                  entity("fever")));
  EXPECT_EQ(g.triple_count(), 2u);
}

TEST(CaseGraphTest, PolicyOverridesDefaults) {
  PredicatePolicy policy;
  policy.declare_multi_valued("allergy");
  policy.declare_single_valued("primary_diagnosis");
  CaseGraph g("c1", policy);
  g.insert_triple(entity("patient"), "allergy", literal("a1", "penicillin"));
  EXPECT_NO_THROW(
      g.insert_triple(entity("patient"), "allergy", literal("a2", "peanuts")));
  g.insert_triple(entity("patient"), "primary_diagnosis", entity("copd"));
  EXPECT_THROW(g.insert_triple(entity("patient"), "primary_diagnosis",
                               entity("asthma")),
               ConflictError);
}

TEST(CaseGraphTest, RejectsDanglingAndLiteralSubjects) {
  CaseGraph g = cough_graph();
  EXPECT_THROW(g.insert_triple(Triple{"patient", "has_symptom", "fever"}),
               UnknownNodeError);
  EXPECT_THROW(g.insert_triple(Triple{"d1", "unit", "cough"}), InvalidGraphError);
  EXPECT_THROW(g.add_node(Node{"x", "", NodeKind::kEntity, std::nullopt}),
               InvalidGraphError);
  EXPECT_THROW(g.add_node(Node{"cough", "Cough!", NodeKind::kEntity,
                               EntityClass::kSymptom}),
               ConflictError);
}

TEST(CaseGraphTest, WithTripleLeavesOriginalUntouched) {
  const CaseGraph base = cough_graph();
  CaseGraph grown = base;
  grown.add_node(entity("fever"));
  grown = with_triple(grown, Triple{"patient", "has_symptom", "fever"});
  EXPECT_EQ(base.triple_count(), 2u);
  EXPECT_EQ(grown.triple_count(), 3u);
}

TEST(CaseGraphTest, ConflictRaisedIffSingleValuedGainsSecondObject) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    CaseGraph g = testing::random_graph(rng, 60);
    const std::vector<std::string> preds = {"duration", "severity",
                                            "related_to"};
    const std::string pred = preds[testing::uniform(rng, preds.size())];
    auto it = g.nodes().begin();
    std::advance(it, static_cast<long>(testing::uniform(rng, g.node_count())));
    if (it->second.kind == NodeKind::kLiteral) continue;
    const Node subject = it->second;
    const bool attribute = pred != "related_to";
    Node object = attribute ? literal("fresh", "value") : entity("fresh");

    // Direct scan for the expected outcome.
    bool expect_conflict = false;
    for (const Triple& t : g.triples()) {
      if (t.subject == subject.id && t.predicate == pred && attribute) {
        expect_conflict = true;
      }
    }
    if (expect_conflict) {
      EXPECT_THROW(g.insert_triple(subject, pred, object), ConflictError);
    } else {
      EXPECT_NO_THROW(g.insert_triple(subject, pred, object));
    }
    EXPECT_TRUE(g.validate().empty());
  }
}

TEST(NeighborhoodTest, RadiusOneAroundCoughHasBothTriples) {
  const CaseGraph g = cough_graph();
  const CaseGraph sub = neighborhood(g, "cough", 1);
  EXPECT_EQ(sub.triple_count(), 2u);
  EXPECT_EQ(sub.node_count(), 3u);
  EXPECT_TRUE(sub.validate().empty());
}

TEST(NeighborhoodTest, IsolatedNode) {
  CaseGraph g = cough_graph();
  g.add_node(entity("lonely"));
  const CaseGraph sub = neighborhood(g, "lonely", 1);
  EXPECT_EQ(sub.triple_count(), 0u);
  EXPECT_EQ(sub.node_count(), 1u);
}

TEST(NeighborhoodTest, SaturatesWhenDiameterIsOne) {
  CaseGraph g("c");
  g.insert_triple(entity("a"), "related_to", entity("b"));
  EXPECT_EQ(neighborhood(g, "a", 2), neighborhood(g, "a", 1));
}

TEST(NeighborhoodTest, Errors) {
  const CaseGraph g = cough_graph();
  EXPECT_THROW(neighborhood(g, "nobody", 1), UnknownNodeError);
  EXPECT_THROW(neighborhood(g, "cough", 3), std::invalid_argument);
}

// BFS oracle on an explicit undirected adjacency list.
std::set<std::tuple<std::string, std::string, std::string>> bfs_triples(
    const CaseGraph& g, const std::string& centre, int radius) {
  std::map<std::string, int> dist = {{centre, 0}};
  std::vector<std::string> queue = {centre};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::string cur = queue[qi];
    for (const Triple& t : g.triples()) {
      std::string other;
      if (t.subject == cur) other = t.object;
      else if (t.object == cur) other = t.subject;
      else continue;
      if (!dist.contains(other)) {
        dist[other] = dist[cur] + 1;
        queue.push_back(other);
      }
    }
  }
  std::set<std::tuple<std::string, std::string, std::string>> out;
  for (const Triple& t : g.triples()) {
    auto ds = dist.find(t.subject);
    auto d_o = dist.find(t.object);
    int near = 1 << 20;
    if (ds != dist.end()) near = std::min(near, ds->second);
    if (d_o != dist.end()) near = std::min(near, d_o->second);
    if (near < radius) out.insert({t.subject, t.predicate, t.object});
  }
  return out;
}

TEST(NeighborhoodTest, MatchesBfsOracleOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 150; ++round) {
    const CaseGraph g = testing::random_graph(rng, 80);
    auto it = g.nodes().begin();
    std::advance(it, static_cast<long>(testing::uniform(rng, g.node_count())));
    for (int radius : {1, 2}) {
      const CaseGraph sub = neighborhood(g, it->first, radius);
      std::set<std::tuple<std::string, std::string, std::string>> got;
      for (const Triple& t : sub.triples()) {
        got.insert({t.subject, t.predicate, t.object});
      }
      EXPECT_EQ(got, bfs_triples(g, it->first, radius));
      EXPECT_TRUE(sub.validate().empty());
    }
  }
}

TEST(MergeTest, OverlayAddsFabricatedFacts) {
  const CaseGraph base = cough_graph();
  CaseGraph overlay("c1");
  overlay.insert_triple(entity("patient", EntityClass::kPersonal),
                        "smoking_status", literal("s1", "never"),
                        Provenance::kFabricated);
  const CaseGraph merged = merge(base, overlay);
  EXPECT_EQ(merged.triple_count(), 3u);
  EXPECT_EQ(merged.objects_of("patient", "smoking_status"),
            std::vector<std::string>{"s1"});
}

}  // namespace
}  // namespace vsp::graph
