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

#include "vsp/service/config.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

namespace vsp::service {

namespace fs = std::filesystem;
using llm::ConfigError;

ServiceConfig config_from_json(const nlohmann::json& value, const std::string& base_dir) {
  if (!value.is_object()) throw ConfigError("service config must be an object");
  ServiceConfig c;
  c.base_dir = base_dir;
  try {
    if (auto it = value.find("listen"); it != value.end()) {
      c.host = it->value("host", c.host);
      c.port = it->value("port", c.port);
    }
    c.data_dir = value.value("data_dir", c.data_dir);
    for (const auto& b : value.value("backends", nlohmann::json::array())) {
      c.backends.push_back(llm::backend_config_from_json(b));
    }
    c.judges = value.value("judges", c.judges);
    c.default_max_turns = value.value("default_max_turns", c.default_max_turns);
    if (auto it = value.find("extraction"); it != value.end()) {
      c.extraction.kind = it->value("kind", c.extraction.kind);
      c.extraction.lexicon = it->value("lexicon", c.extraction.lexicon);
      c.extraction.attribute_patterns =
          it->value("attribute_patterns", c.extraction.attribute_patterns);
      c.extraction.backend = it->value("backend", c.extraction.backend);
    }
    c.classifier = value.value("classifier", c.classifier);
    c.sampling = llm::sampling_from_json(value.value("sampling", nlohmann::json::object()));
    if (auto it = value.find("sentiment"); it != value.end()) {
      c.sentiment_positive = it->value("positive", c.sentiment_positive);
      c.sentiment_negative = it->value("negative", c.sentiment_negative);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad service config: ") + e.what());
  }
  if (c.port < 0 || c.port > 65535) throw ConfigError("listen.port out of range");
  if (c.default_max_turns < 1) throw ConfigError("default_max_turns must be >= 1");
  if (c.extraction.kind != "rule" && c.extraction.kind != "llm") {
    throw ConfigError("extraction.kind must be 'rule' or 'llm'");
  }
  if (c.sentiment_positive.empty() != c.sentiment_negative.empty()) {
    throw ConfigError("sentiment needs both word lists or neither");
  }
  return c;
}

ServiceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + " is not JSON: " + e.what());
  }
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  return config_from_json(value, parent.string());
}

std::optional<std::string> config_path_from_env() {
  const char* value = std::getenv(kConfigEnvVar);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

std::string resolve_path(const ServiceConfig& config, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute()) return p.string();
  return (fs::path(config.base_dir) / p).lexically_normal().string();
}

void validate(const ServiceConfig& c) {
  std::set<std::string> ids;
  for (const auto& b : c.backends) {
    if (!ids.insert(b.backend_id).second) {
      throw ConfigError("duplicate backend id '" + b.backend_id + "'");
    }
  }
  if (c.judges.empty() || c.judges.size() % 2 == 0) {
    throw ConfigError("judge roster must have an odd number of judges, got " +
                      std::to_string(c.judges.size()));
  }
  for (const auto& j : c.judges) {
    if (!ids.count(j)) throw ConfigError("judge '" + j + "' is not a configured backend");
  }
  if (c.extraction.kind == "llm" && !ids.count(c.extraction.backend)) {
    throw ConfigError("extraction backend '" + c.extraction.backend + "' is not configured");
  }
  if (!c.classifier.empty() && !ids.count(c.classifier)) {
    throw ConfigError("classifier '" + c.classifier + "' is not a configured backend");
  }
  const fs::path dir = resolve_path(c, c.data_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create data directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    out << "ok";
    if (!out) throw ConfigError("data directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

}  // namespace vsp::service
