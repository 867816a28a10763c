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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsp/llm/chat.h"
#include "vsp/llm/registry.h"

// Service configuration file:
//
//   {"listen": {"host": "127.0.0.1", "port": 8080},
//    "data_dir": "var",
//    "backends": [BackendConfig, ...],
//    "judges": ["judge-1", "judge-2", "judge-3"],
//    "default_max_turns": 20,
//    "extraction": {"kind": "rule", "lexicon": "lexicon.tsv",
//                   "attribute_patterns": "attribute_patterns.tsv"}
//                | {"kind": "llm", "backend": "extractor"},
//    "classifier": "backend id",
//    "sampling": {...},
//    "sentiment": {"positive": "pos.txt", "negative": "neg.txt"}}
//
// Relative paths resolve against the config file's directory. API keys are
// never read from the file, only from the variables named by auth_env.
namespace vsp::service {

inline constexpr const char* kConfigEnvVar = "CUREFUN_CONFIG";

struct ExtractionConfig {
  std::string kind = "rule";  // "rule" or "llm"
  std::string lexicon;        // rule: path, empty for an empty lexicon
  std::string attribute_patterns;  // rule: path, empty for the built-in set
  std::string backend;        // llm: backend id
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "var";
  std::vector<llm::BackendConfig> backends;
  std::vector<std::string> judges;
  int default_max_turns = 20;
  ExtractionConfig extraction;
  std::string classifier;
  llm::SamplingDefaults sampling;
  std::string sentiment_positive;
  std::string sentiment_negative;
  std::string base_dir = ".";  // where relative paths resolve
};

// Throws llm::ConfigError.
ServiceConfig config_from_json(const nlohmann::json& value, const std::string& base_dir);
ServiceConfig load_config(const std::string& path);
// Value of CUREFUN_CONFIG, if set and non-empty.
std::optional<std::string> config_path_from_env();

// Resolves `path` against config.base_dir unless it is absolute.
std::string resolve_path(const ServiceConfig& config, const std::string& path);

// Creates the data directory and probes that it is writable; checks that
// the judge roster is odd and names configured backends. Throws
// llm::ConfigError.
void validate(const ServiceConfig& config);

}  // namespace vsp::service
