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

#include "vsp/ingest/case_script.h"

#include <gtest/gtest.h>

namespace vsp::ingest {
namespace {

std::string field_of(const std::string& doc) {
  try {
    parse_case_script(doc);
  } catch (const SchemaError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(CaseScriptTest, MinimalDocument) {
  const CaseScript s = parse_case_script(
      R"({"case_id": "c1", "sections": [{"title": "CC", "body": "cough"}]})");
  EXPECT_EQ(s.case_id, "c1");
  EXPECT_EQ(s.language, "und");
  ASSERT_EQ(s.sections.size(), 1u);
  EXPECT_FALSE(s.expected_diagnosis);
}

TEST(CaseScriptTest, MissingOrIllTypedFieldsAreNamed) {
  EXPECT_EQ(field_of(R"({"sections": [{"title": "a", "body": "b"}]})"), "case_id");
  EXPECT_EQ(field_of(R"({"case_id": 5, "sections": []})"), "case_id");
  EXPECT_EQ(field_of(R"({"case_id": "c"})"), "sections");
  EXPECT_EQ(field_of(R"({"case_id": "c", "sections": []})"), "sections");
  EXPECT_EQ(field_of(R"({"case_id": "c", "sections": [{"title": "a"}]})"),
            "sections[0].body");
  EXPECT_EQ(field_of(R"({"case_id": "c", "profile": {"age": [1]},
                         "sections": [{"title": "a", "body": "b"}]})"),
            "profile.age");
  EXPECT_EQ(field_of("not json"), "$");
}

TEST(CaseScriptTest, ProfileNumbersAndExtrasSurvive) {
  const CaseScript s = parse_case_script(R"({
      "case_id": "c", "language": "zh", "profile": {"age": 45, "temp": 38.5},
      "sections": [{"title": "a", "body": "b"}], "source": {"hospital": "x"}})");
  EXPECT_EQ(s.profile.at("age"), "45");
  EXPECT_EQ(s.profile.at("temp"), "38.5");
  EXPECT_EQ(s.extras["source"]["hospital"], "x");
  EXPECT_EQ(case_script_from_json(to_json(s)), s);
}

TEST(CaseScriptTest, BundledSampleHasSixSections) {
  const CaseScript s =
      read_case_script_file(std::string(VSP_TEST_DATA_DIR) + "/cases/sample_cough.json");
  EXPECT_EQ(s.case_id, "sample_cough");
  EXPECT_EQ(s.sections.size(), 6u);
  EXPECT_EQ(s.expected_diagnosis, "acute bronchitis");
}

TEST(PlainTextImportTest, HeadingsBecomeSections) {
  const CaseScript s = import_plain_text(
      "name: Li Wei\nage: 45\n\n# Chief complaint\nCough for 3 days.\n\n"
      "# History\nDry cough.\nWorse at night.\n",
      "plain");
  EXPECT_EQ(s.profile.at("age"), "45");
  ASSERT_EQ(s.sections.size(), 2u);
  EXPECT_EQ(s.sections[0].title, "Chief complaint");
  EXPECT_EQ(s.sections[1].body, "Dry cough.\nWorse at night.");
  EXPECT_THROW(import_plain_text("no headings here", "x"), SchemaError);
  EXPECT_THROW(import_plain_text("# T\nbody", ""), SchemaError);
}

}  // namespace
}  // namespace vsp::ingest
