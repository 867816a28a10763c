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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "vsp/graph/graph_io.h"
#include "vsp/ingest/rule_extractor.h"

namespace vsp::ingest {
namespace {

using graph::EntityClass;
using graph::NodeKind;

CaseScript one_section(std::string body) {
  CaseScript s;
  s.case_id = "c";
  s.sections.push_back({"CC", std::move(body)});
  return s;
}

Lexicon shipped_lexicon() {
  return Lexicon::from_file(std::string(VSP_TEST_DATA_DIR) + "/lexicon.tsv");
}

// Directed reachability from the patient, computed independently of the
// builder.
std::set<std::string> reachable(const graph::CaseGraph& g) {
  std::set<std::string> seen = {"patient"};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& t : g.triples()) {
      if (seen.contains(t.subject) && seen.insert(t.object).second) grew = true;
    }
  }
  return seen;
}

TEST(GraphBuilderTest, EmptyExtractionsKeepProfile) {
  CaseScript s = one_section("nothing");
  s.profile = {{"age", "45"}, {"sex", "male"}, {"blank", " "}};
  const graph::CaseGraph g = build_case_graph(s, {ExtractionResult{}});
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.triple_count(), 2u);
  EXPECT_EQ(g.objects_of("patient", "age"),
            std::vector<std::string>{"lit:patient/age/45"});
  EXPECT_EQ(g.find_node("patient")->entity_class, EntityClass::kPersonal);
}

TEST(GraphBuilderTest, CoughTemperatureGraph) {
  const CaseScript s = one_section("Patient has cough for 3 days; temperature 38.5.");
  const graph::CaseGraph g = ingest_case(s, RuleBasedExtractor(shipped_lexicon()));
  // patient, cough, "3 days", "38.5"
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.triple_count(), 3u);
  EXPECT_TRUE(g.contains({"patient", "has_symptom", "cough"}));
  EXPECT_EQ(g.find_node(g.objects_of("cough", "duration").at(0))->label, "3 days");
  EXPECT_EQ(g.find_node(g.objects_of("patient", "body_temperature").at(0))->label,
            "38.5");
  for (const auto& t : g.triples()) {
    EXPECT_EQ(t.provenance, graph::Provenance::kScripted);
  }
}

TEST(GraphBuilderTest, ConflictingSectionsRaise) {
  CaseScript s = one_section("temperature 38.5");
  s.sections.push_back({"Exam", "temperature 39.0"});
  EXPECT_THROW(ingest_case(s, RuleBasedExtractor(shipped_lexicon())),
               graph::ConflictError);
  // Agreeing sections are fine.
  s.sections[1].body = "Temperature 38.5 again.";
  EXPECT_NO_THROW(ingest_case(s, RuleBasedExtractor(shipped_lexicon())));
}

TEST(GraphBuilderTest, ResultCountMustMatchSections) {
  EXPECT_THROW(build_case_graph(one_section("x"), {}), std::invalid_argument);
}

TEST(GraphBuilderTest, UnlinkedEntitiesHangOffPatient) {
  ExtractionResult r;
  r.entities = {{"Chest X-ray", {0, 1}, EntityClass::kExamination},
                {"lung shadow", {0, 1}, EntityClass::kOther}};
  r.relations = {{"Chest X-ray", "shows", "lung shadow"}};
  const graph::CaseGraph g = build_case_graph(one_section("xx"), {r});
  EXPECT_TRUE(g.contains({"patient", "underwent_exam", "chest_x-ray"}));
  // Already reachable through the exam, so no direct edge.
  EXPECT_FALSE(g.contains({"patient", "related_to", "lung_shadow"}));
  EXPECT_EQ(g.find_node("chest_x-ray")->label, "Chest X-ray");
}

TEST(GraphBuilderTest, BundledSampleCase) {
  const CaseScript s =
      read_case_script_file(std::string(VSP_TEST_DATA_DIR) + "/cases/sample_cough.json");
  const RuleBasedExtractor ex(shipped_lexicon());
  const graph::CaseGraph g = ingest_case(s, ex);
  EXPECT_TRUE(g.validate().empty());
  EXPECT_TRUE(g.contains({"patient", "has_symptom", "cough"}));
  EXPECT_TRUE(g.contains({"patient", "has_symptom", "sore_throat"}));
  EXPECT_TRUE(g.contains({"patient", "has_disease", "hypertension"}));
  EXPECT_TRUE(g.contains({"patient", "takes_medication", "amlodipine"}));
  EXPECT_TRUE(g.contains({"patient", "underwent_exam", "chest_x-ray"}));
  EXPECT_EQ(g.objects_of("patient", "blood_pressure"),
            std::vector<std::string>{"lit:patient/blood_pressure/130/85"});
  EXPECT_EQ(g.objects_of("hypertension", "duration"),
            std::vector<std::string>{"lit:hypertension/duration/5 years"});
  // Determinism: a second ingest serialises identically.
  EXPECT_EQ(graph::serialize(ingest_case(s, ex)), graph::serialize(g));
}

TEST(GraphBuilderTest, RandomExtractionsKeepInvariants) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> mentions = {"cough", "Fever", "sore throat",
                                             "x-ray", "咳嗽", "patient"};
  const std::vector<std::string> attrs = {"duration", "severity", "onset"};
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  int built = 0;
  for (int round = 0; round < 300; ++round) {
    CaseScript s;
    s.case_id = "fuzz";
    s.profile["age"] = std::to_string(pick(90));
    std::vector<ExtractionResult> results;
    const std::size_t sections = 1 + pick(3);
    for (std::size_t i = 0; i < sections; ++i) {
      s.sections.push_back({"s", "body"});
      ExtractionResult r;
      std::vector<std::string> present = {"patient"};
      for (std::size_t k = pick(4); k > 0; --k) {
        const std::string m = mentions[pick(mentions.size())];
        r.entities.push_back({m, {0, 1}, static_cast<EntityClass>(pick(6))});
        present.push_back(m);
      }
      for (std::size_t k = pick(3); k > 0; --k) {
        r.relations.push_back({present[pick(present.size())], "related_to",
                               present[pick(present.size())]});
      }
      for (std::size_t k = pick(3); k > 0; --k) {
        r.attributes.push_back({present[pick(present.size())],
                                attrs[pick(attrs.size())],
                                std::to_string(pick(3)) + " days"});
      }
      results.push_back(std::move(r));
    }
    graph::CaseGraph g;
    try {
      g = build_case_graph(s, results);
    } catch (const graph::ConflictError&) {
      continue;  // disagreeing single-valued attributes across mentions
    }
    ++built;
    ASSERT_TRUE(g.validate().empty());
    const std::set<std::string> seen = reachable(g);
    for (const auto& [id, node] : g.nodes()) {
      EXPECT_TRUE(seen.contains(id)) << id;
    }
    EXPECT_EQ(graph::serialize(build_case_graph(s, results)), graph::serialize(g));
  }
  EXPECT_GT(built, 50);
}

TEST(EntityIdTest, Slugs) {
  EXPECT_EQ(entity_id("Sore  Throat"), "sore_throat");
  EXPECT_EQ(entity_id("咳嗽"), "咳嗽");
  EXPECT_EQ(literal_id("patient", "age", "45"), "lit:patient/age/45");
}

}  // namespace
}  // namespace vsp::ingest
