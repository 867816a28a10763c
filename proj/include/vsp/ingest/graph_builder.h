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

#include <string>
#include <string_view>
#include <vector>

#include "vsp/graph/case_graph.h"
#include "vsp/ingest/case_script.h"
#include "vsp/ingest/extraction.h"

namespace vsp::ingest {

inline constexpr std::string_view kPatientId = "patient";

// Lower-cased (ASCII) with whitespace runs replaced by '_'.
std::string entity_id(std::string_view mention);
std::string literal_id(std::string_view subject_id, std::string_view predicate,
                       std::string_view value);

// Graph layout:
//   patient (entity, class personal) is the root;
//   profile fields become literal attributes of the patient;
//   each extracted entity is a node, relations and attributes are scripted
//   triples, and any entity not reachable from the patient gets its class
//   relation from the patient.
// The first class seen for an entity id wins. Requires one result per
// section (std::invalid_argument); graph::ConflictError propagates when
// sections disagree on a single-valued attribute.
graph::CaseGraph build_case_graph(const CaseScript& script,
                                  const std::vector<ExtractionResult>& results,
                                  graph::PredicatePolicy policy = {});

// Extracts every section body and builds the graph.
graph::CaseGraph ingest_case(const CaseScript& script, const Extractor& extractor,
                             graph::PredicatePolicy policy = {});

}  // namespace vsp::ingest
