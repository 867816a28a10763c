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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

// Case script container:
//
//   {"case_id": str, "language": str, "profile": {str: str|number},
//    "sections": [{"title": str, "body": str}], "expected_diagnosis": str?}
//
// Unknown top-level keys are kept in `extras` and written back by to_json.
namespace vsp::ingest {

struct Section {
  std::string title;
  std::string body;

  friend bool operator==(const Section&, const Section&) = default;
};

struct CaseScript {
  std::string case_id;
  std::string language = "und";
  // Numbers are stored in their shortest JSON spelling ("45", "38.5").
  std::map<std::string, std::string> profile;
  std::vector<Section> sections;
  std::optional<std::string> expected_diagnosis;
  nlohmann::json extras = nlohmann::json::object();

  friend bool operator==(const CaseScript&, const CaseScript&) = default;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& field, const std::string& message)
      : std::runtime_error("case script field '" + field + "': " + message),
        field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Throws SchemaError; a document that is not JSON names the field "$".
CaseScript parse_case_script(std::string_view document);
CaseScript case_script_from_json(const nlohmann::json& value);
nlohmann::json to_json(const CaseScript& script);
CaseScript read_case_script_file(const std::string& path);

// Plain-text import: leading "key: value" lines fill the profile, each
// "# Title" line opens a section, everything else is section body.
CaseScript import_plain_text(std::string_view text, std::string case_id);

}  // namespace vsp::ingest
