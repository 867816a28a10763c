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

#include <memory>
#include <string>

#include "vsp/ingest/extraction.h"
#include "vsp/llm/chat.h"

namespace vsp::ingest {

// Prompts a chat backend for JSON of the form
//   {"entities": [{"mention": str, "class": str}],
//    "relations": [{"head": str, "predicate": str, "tail": str}],
//    "attributes": [{"entity": str, "attribute": str, "value": str}]}
// optionally wrapped in a ``` fence. Mentions absent from the text are
// dropped together with the relations and attributes that use them.
// Transport failures propagate as llm::BackendError; an unusable reply
// raises llm::MalformedResponseError.
class LlmExtractor : public Extractor {
 public:
  explicit LlmExtractor(std::shared_ptr<const llm::ChatBackend> backend,
                        double temperature = 0.0);

  ExtractionResult extract(std::string_view text) const override;

  static llm::ChatRequest build_request(std::string_view text, double temperature);
  static ExtractionResult parse_reply(const std::string& reply,
                                      std::string_view text);

 private:
  std::shared_ptr<const llm::ChatBackend> backend_;
  double temperature_;
};

}  // namespace vsp::ingest
