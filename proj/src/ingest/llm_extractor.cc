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

#include "vsp/ingest/llm_extractor.h"

#include <set>

#include "vsp/common/text.h"

namespace vsp::ingest {
namespace {

constexpr std::string_view kInstructions =
    "[EXTRACT] You read one section of a clinical case script. List the "
    "medical entities it mentions (class: symptom, disease, medication, "
    "examination, personal or other), relations between them or from "
    "\"patient\", and attribute values such as body_temperature or duration. "
    "Reply with JSON only: {\"entities\": [{\"mention\": str, \"class\": str}], "
    "\"relations\": [{\"head\": str, \"predicate\": str, \"tail\": str}], "
    "\"attributes\": [{\"entity\": str, \"attribute\": str, \"value\": str}]}. "
    "Mentions must be copied verbatim from the text.";

std::string strip_fence(std::string reply) {
  reply = text::trim(reply);
  if (!reply.starts_with("```")) return reply;
  const std::size_t first_nl = reply.find('\n');
  const std::size_t close = reply.rfind("```");
  if (first_nl == std::string::npos || close <= first_nl) return reply;
  return text::trim(reply.substr(first_nl + 1, close - first_nl - 1));
}

std::string string_field(const nlohmann::json& item, const char* key) {
  auto it = item.find(key);
  if (it == item.end() || !it->is_string()) {
    throw llm::MalformedResponseError(std::string("extraction item lacks '") +
                                      key + "'");
  }
  return text::trim(it->get<std::string>());
}

const nlohmann::json& list_field(const nlohmann::json& doc, const char* key) {
  static const nlohmann::json kEmpty = nlohmann::json::array();
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return kEmpty;
  if (!it->is_array()) {
    throw llm::MalformedResponseError(std::string("'") + key + "' is not a list");
  }
  return *it;
}

}  // namespace

LlmExtractor::LlmExtractor(std::shared_ptr<const llm::ChatBackend> backend,
                           double temperature)
    : backend_(std::move(backend)), temperature_(temperature) {}

llm::ChatRequest LlmExtractor::build_request(std::string_view text,
                                             double temperature) {
  llm::ChatRequest req;
  req.messages.push_back({llm::Role::kSystem, std::string(kInstructions)});
  req.messages.push_back({llm::Role::kUser, "[EXTRACT]\n" + std::string(text)});
  req.temperature = temperature;
  req.max_tokens = 1024;
  return req;
}

ExtractionResult LlmExtractor::parse_reply(const std::string& reply,
                                           std::string_view text) {
  const nlohmann::json doc = nlohmann::json::parse(strip_fence(reply), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw llm::MalformedResponseError("extraction reply is not a JSON object");
  }
  ExtractionResult result;
  std::set<std::string> kept = {std::string(kPatientMention)};
  for (const auto& item : list_field(doc, "entities")) {
    if (!item.is_object()) throw llm::MalformedResponseError("bad entity item");
    const std::string mention = string_field(item, "mention");
    const auto cls = graph::parse_entity_class(
        text::to_lower_ascii(item.value("class", std::string("other"))));
    const std::size_t at = text::find_icase(text, mention);
    if (mention.empty() || at == std::string::npos ||
        text::normalize_utf8(mention) == kPatientMention ||
        kept.contains(mention)) {
      continue;
    }
    result.entities.push_back(
        {mention,
         {text::code_point_offset(text, at),
          text::code_point_offset(text, at + mention.size())},
         cls.value_or(graph::EntityClass::kOther)});
    kept.insert(mention);
  }
  for (const auto& item : list_field(doc, "relations")) {
    if (!item.is_object()) throw llm::MalformedResponseError("bad relation item");
    RelationMention r{string_field(item, "head"), string_field(item, "predicate"),
                      string_field(item, "tail")};
    if (kept.contains(r.head) && kept.contains(r.tail) && !r.predicate.empty()) {
      result.relations.push_back(std::move(r));
    }
  }
  for (const auto& item : list_field(doc, "attributes")) {
    if (!item.is_object()) throw llm::MalformedResponseError("bad attribute item");
    AttributeMention a{string_field(item, "entity"), string_field(item, "attribute"),
                       string_field(item, "value")};
    if (kept.contains(a.entity) && !a.attribute.empty() && !a.value.empty()) {
      result.attributes.push_back(std::move(a));
    }
  }
  return result;
}

ExtractionResult LlmExtractor::extract(std::string_view text) const {
  if (text::trim(text).empty()) return {};
  return parse_reply(backend_->complete(build_request(text, temperature_)), text);
}

}  // namespace vsp::ingest
