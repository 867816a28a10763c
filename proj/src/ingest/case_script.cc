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

#include <fstream>
#include <set>
#include <sstream>

#include "vsp/common/text.h"

namespace vsp::ingest {
namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "case_id", "language", "profile", "sections", "expected_diagnosis"};
  return keys;
}

std::string required_string(const nlohmann::json& v, const std::string& key) {
  auto it = v.find(key);
  if (it == v.end() || it->is_null()) throw SchemaError(key, "missing");
  if (!it->is_string()) throw SchemaError(key, "must be a string");
  return it->get<std::string>();
}

}  // namespace

CaseScript case_script_from_json(const nlohmann::json& value) {
  if (!value.is_object()) throw SchemaError("$", "document must be an object");
  CaseScript script;
  script.case_id = required_string(value, "case_id");
  if (text::trim(script.case_id).empty()) {
    throw SchemaError("case_id", "must not be empty");
  }
  if (value.contains("language")) {
    script.language = required_string(value, "language");
  }

  if (auto it = value.find("profile"); it != value.end() && !it->is_null()) {
    if (!it->is_object()) throw SchemaError("profile", "must be an object");
    for (const auto& [key, field] : it->items()) {
      if (field.is_string()) {
        script.profile[key] = field.get<std::string>();
      } else if (field.is_number()) {
        script.profile[key] = field.dump();
      } else {
        throw SchemaError("profile." + key, "must be a string or number");
      }
    }
  }

  auto sections = value.find("sections");
  if (sections == value.end()) throw SchemaError("sections", "missing");
  if (!sections->is_array()) throw SchemaError("sections", "must be a list");
  if (sections->empty()) throw SchemaError("sections", "needs at least one section");
  for (std::size_t i = 0; i < sections->size(); ++i) {
    const nlohmann::json& s = (*sections)[i];
    const std::string where = "sections[" + std::to_string(i) + "]";
    if (!s.is_object()) throw SchemaError(where, "must be an object");
    Section section;
    try {
      section.title = required_string(s, "title");
      section.body = required_string(s, "body");
    } catch (const SchemaError& e) {
      throw SchemaError(where + "." + e.field(), "missing or not a string");
    }
    script.sections.push_back(std::move(section));
  }

  if (auto it = value.find("expected_diagnosis");
      it != value.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw SchemaError("expected_diagnosis", "must be a string");
    }
    script.expected_diagnosis = it->get<std::string>();
  }

  for (const auto& [key, field] : value.items()) {
    if (!known_keys().contains(key)) script.extras[key] = field;
  }
  return script;
}

CaseScript parse_case_script(std::string_view document) {
  const nlohmann::json doc = nlohmann::json::parse(document, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("$", "not valid JSON");
  return case_script_from_json(doc);
}

nlohmann::json to_json(const CaseScript& script) {
  nlohmann::json out = script.extras.is_object() ? script.extras
                                                 : nlohmann::json::object();
  out["case_id"] = script.case_id;
  out["language"] = script.language;
  out["profile"] = script.profile;
  nlohmann::json sections = nlohmann::json::array();
  for (const Section& s : script.sections) {
    sections.push_back({{"title", s.title}, {"body", s.body}});
  }
  out["sections"] = std::move(sections);
  if (script.expected_diagnosis) {
    out["expected_diagnosis"] = *script.expected_diagnosis;
  }
  return out;
}

CaseScript read_case_script_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open case script " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_case_script(buf.str());
}

CaseScript import_plain_text(std::string_view input, std::string case_id) {
  CaseScript script;
  script.case_id = std::move(case_id);
  bool in_sections = false;
  for (const std::string& raw : text::split(input, '\n')) {
    const std::string line = text::trim(raw);
    if (line.starts_with("#")) {
      in_sections = true;
      const std::size_t start = std::min(line.find_first_not_of('#'), line.size());
      script.sections.push_back({text::trim(line.substr(start)), ""});
      continue;
    }
    if (!in_sections) {
      if (line.empty()) continue;
      const std::size_t colon = line.find(':');
      if (colon == std::string::npos) {
        throw SchemaError("profile", "expected 'key: value' before the first heading");
      }
      script.profile[text::trim(line.substr(0, colon))] =
          text::trim(line.substr(colon + 1));
      continue;
    }
    std::string& body = script.sections.back().body;
    if (line.empty() && body.empty()) continue;
    if (!body.empty()) body.push_back('\n');
    body += line;
  }
  for (Section& s : script.sections) s.body = text::trim(s.body);
  if (script.sections.empty()) {
    throw SchemaError("sections", "needs at least one '# heading'");
  }
  if (text::trim(script.case_id).empty()) {
    throw SchemaError("case_id", "must not be empty");
  }
  return script;
}

}  // namespace vsp::ingest
