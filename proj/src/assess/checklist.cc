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

#include "vsp/assess/checklist.h"

#include <cmath>
#include <fstream>
#include <set>

#include "vsp/common/text.h"

namespace vsp::assess {
namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& row, const char* key) {
  std::vector<std::string> out;
  if (!row.contains(key) || row[key].is_null()) return out;
  if (!row[key].is_array()) {
    throw ChecklistFormatError(std::string("'") + key + "' must be a list of strings");
  }
  for (const auto& v : row[key]) {
    if (!v.is_string()) {
      throw ChecklistFormatError(std::string("'") + key + "' must be a list of strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::optional<std::string> optional_string(const json& row, const char* key) {
  if (!row.contains(key) || row[key].is_null()) return std::nullopt;
  if (!row[key].is_string()) {
    throw ChecklistFormatError(std::string("'") + key + "' must be a string");
  }
  return row[key].get<std::string>();
}

Weights weights_from_json(const json& w) {
  Weights out;
  if (!w.is_object()) throw ChecklistFormatError("'weights' must be an object");
  out.aspect = w.value("aspect", out.aspect);
  out.info = w.value("info", out.info);
  return out;
}

std::string strip_fences(std::string reply) {
  reply = text::trim(reply);
  if (reply.rfind("```", 0) == 0) {
    auto nl = reply.find('\n');
    reply = nl == std::string::npos ? "" : reply.substr(nl + 1);
    auto close = reply.rfind("```");
    if (close != std::string::npos) reply.erase(close);
  }
  return text::trim(reply);
}

}  // namespace

std::string_view to_string(ItemKind kind) {
  return kind == ItemKind::kAspect ? "aspect" : "information";
}

std::optional<ItemKind> parse_item_kind(std::string_view text) {
  if (text == "aspect") return ItemKind::kAspect;
  if (text == "information" || text == "info") return ItemKind::kInformation;
  return std::nullopt;
}

std::size_t ScoringProgram::count(ItemKind kind) const {
  std::size_t n = 0;
  for (const auto& item : items) n += item.kind == kind;
  return n;
}

void validate(const ScoringProgram& program) {
  const Weights& w = program.weights;
  if (!(w.aspect >= 0.0) || !(w.info >= 0.0) ||
      std::abs(w.aspect + w.info - 1.0) > 1e-9) {
    throw std::invalid_argument("weights must be non-negative and sum to 1");
  }
  if (program.items.empty()) throw std::invalid_argument("scoring program has no items");
  std::set<std::string> ids;
  for (const auto& item : program.items) {
    if (item.id.empty()) throw std::invalid_argument("checklist item with empty id");
    if (!ids.insert(item.id).second) {
      throw std::invalid_argument("duplicate checklist item id '" + item.id + "'");
    }
    if (text::trim(item.description).empty()) {
      throw std::invalid_argument("checklist item '" + item.id + "' has no description");
    }
    if (item.kind == ItemKind::kInformation && text::trim(item.canonical_value).empty()) {
      throw std::invalid_argument("information item '" + item.id +
                                  "' has no canonical value");
    }
  }
}

RawChecklist parse_raw_checklist(const json& value) {
  RawChecklist out;
  const json* rows = &value;
  if (value.is_object()) {
    if (!value.contains("items")) throw ChecklistFormatError("checklist object needs 'items'");
    rows = &value["items"];
    if (value.contains("weights")) out.weights = weights_from_json(value["weights"]);
  }
  if (!rows->is_array()) throw ChecklistFormatError("checklist must be a list of rows");
  std::size_t index = 0;
  for (const auto& row : *rows) {
    ++index;
    if (!row.is_object()) {
      throw ChecklistFormatError("checklist row " + std::to_string(index) +
                                 " is not an object");
    }
    RawChecklistRow r;
    auto text_field = optional_string(row, "text");
    if (!text_field || text::trim(*text_field).empty()) {
      throw ChecklistFormatError("checklist row " + std::to_string(index) + " has no text");
    }
    r.text = *text_field;
    if (auto cat = optional_string(row, "category")) {
      r.category = parse_item_kind(*cat);
      if (!r.category) {
        throw ChecklistFormatError("checklist row " + std::to_string(index) +
                                   ": unknown category '" + *cat + "'");
      }
    }
    r.id = optional_string(row, "id");
    r.canonical_value = optional_string(row, "canonical_value");
    if (row.contains("points") && !row["points"].is_null()) {
      if (!row["points"].is_number()) throw ChecklistFormatError("'points' must be a number");
      r.points = row["points"].get<double>();
    }
    r.paraphrase_hints = string_list(row, "paraphrase_hints");
    r.keywords = string_list(row, "keywords");
    r.guidance = optional_string(row, "guidance").value_or("");
    out.rows.push_back(std::move(r));
  }
  return out;
}

RawChecklist read_raw_checklist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checklist " + path);
  try {
    return parse_raw_checklist(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ChecklistFormatError("checklist " + path + ": " + e.what());
  }
}

llm::ChatRequest build_classify_request(const RawChecklistRow& row) {
  llm::ChatRequest request;
  request.temperature = 0.0;
  request.messages.push_back(
      {llm::Role::kSystem,
       "Classify one row of a clinical history-taking checklist. An 'aspect' is "
       "something the student must actively do or ask. An 'information' item is a "
       "fact the patient must state. Reply with a JSON object: {\"category\": "
       "\"aspect\" or \"information\", \"canonical_value\": the fact's short value "
       "(information only), \"guidance\": one sentence telling a grader what counts}."});
  request.messages.push_back({llm::Role::kUser, "[CLASSIFY]\nRow: " + row.text});
  return request;
}

ScoringProgram compile_checklist(const RawChecklist& raw, const llm::ChatBackend* backend) {
  if (raw.rows.empty()) throw EmptyChecklistError();
  ScoringProgram program;
  program.weights = raw.weights;
  std::size_t aspects = 0;
  std::size_t infos = 0;
  for (const auto& row : raw.rows) {
    ChecklistItem item;
    item.description = text::trim(row.text);
    item.judge_guidance = row.guidance;
    item.paraphrase_hints = row.paraphrase_hints;
    item.keywords = row.keywords;
    item.canonical_value = row.canonical_value.value_or("");
    if (row.category) {
      item.kind = *row.category;
    } else {
      if (!backend) {
        throw ChecklistFormatError("row '" + row.text +
                                   "' is untagged and no classifier backend is set");
      }
      std::string reply = strip_fences(backend->complete(build_classify_request(row)));
      json parsed;
      try {
        parsed = json::parse(reply);
      } catch (const json::parse_error&) {
        throw llm::MalformedResponseError("classifier reply is not JSON: " + reply);
      }
      if (!parsed.is_object() || !parsed.contains("category") ||
          !parsed["category"].is_string()) {
        throw llm::MalformedResponseError("classifier reply lacks a category: " + reply);
      }
      auto kind = parse_item_kind(parsed["category"].get<std::string>());
      if (!kind) throw llm::MalformedResponseError("classifier category unknown: " + reply);
      item.kind = *kind;
      if (item.canonical_value.empty() && parsed.contains("canonical_value") &&
          parsed["canonical_value"].is_string()) {
        item.canonical_value = parsed["canonical_value"].get<std::string>();
      }
      if (item.judge_guidance.empty() && parsed.contains("guidance") &&
          parsed["guidance"].is_string()) {
        item.judge_guidance = parsed["guidance"].get<std::string>();
      }
    }
    std::size_t& counter = item.kind == ItemKind::kAspect ? aspects : infos;
    ++counter;
    item.id = row.id.value_or((item.kind == ItemKind::kAspect ? "A" : "I") +
                              std::to_string(counter));
    program.items.push_back(std::move(item));
  }
  try {
    validate(program);
  } catch (const std::invalid_argument& e) {
    throw ChecklistFormatError(e.what());
  }
  return program;
}

json to_json(const ScoringProgram& program) {
  json items = json::array();
  for (const auto& item : program.items) {
    json j = {{"id", item.id},
              {"category", std::string(to_string(item.kind))},
              {"text", item.description}};
    if (!item.judge_guidance.empty()) j["guidance"] = item.judge_guidance;
    if (!item.canonical_value.empty()) j["canonical_value"] = item.canonical_value;
    if (!item.paraphrase_hints.empty()) j["paraphrase_hints"] = item.paraphrase_hints;
    if (!item.keywords.empty()) j["keywords"] = item.keywords;
    items.push_back(std::move(j));
  }
  return {{"items", items},
          {"weights", {{"aspect", program.weights.aspect}, {"info", program.weights.info}}}};
}

ScoringProgram program_from_json(const json& value) {
  RawChecklist raw = parse_raw_checklist(value);
  for (const auto& row : raw.rows) {
    if (!row.category) throw ChecklistFormatError("program row '" + row.text + "' is untagged");
  }
  return compile_checklist(raw, nullptr);
}

}  // namespace vsp::assess
