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

#include "vsp/llm/registry.h"

#include <cmath>
#include <filesystem>
#include <mutex>

#include "vsp/llm/openai_backend.h"
#include "vsp/llm/scripted_backend.h"

namespace vsp::llm {

BackendConfig backend_config_from_json(const nlohmann::json& value) {
  if (!value.is_object()) throw ConfigError("backend config must be an object");
  BackendConfig c;
  try {
    c.backend_id = value.at("backend_id").get<std::string>();
    c.kind = value.value("kind", c.kind);
    c.endpoint = value.value("endpoint", c.endpoint);
    c.model = value.value("model", c.model);
    c.auth_env = value.value("auth_env", c.auth_env);
    c.timeout_s = value.value("timeout_s", c.timeout_s);
    c.max_retries = value.value("max_retries", c.max_retries);
    c.max_concurrency = value.value("max_concurrency", c.max_concurrency);
    c.fixture = value.value("fixture", c.fixture);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad backend config: ") + e.what());
  }
  if (c.backend_id.empty()) throw ConfigError("backend_id is empty");
  if (c.timeout_s <= 0) throw ConfigError("timeout_s must be positive");
  if (c.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (c.max_concurrency < 1) throw ConfigError("max_concurrency must be >= 1");
  c.extra = value;
  return c;
}

std::shared_ptr<const ChatBackend> make_openai_backend(const BackendConfig& config) {
  if (config.endpoint.empty()) {
    throw ConfigError("backend " + config.backend_id + " has no endpoint");
  }
  OpenAiOptions o;
  o.endpoint = config.endpoint;
  o.model = config.model;
  o.auth_env = config.auth_env;
  o.timeout = std::chrono::milliseconds(
      static_cast<long long>(std::llround(config.timeout_s * 1000)));
  o.retry.max_retries = config.max_retries;
  o.max_concurrency = config.max_concurrency;
  return std::make_shared<OpenAiChatBackend>(std::move(o));
}

std::shared_ptr<const ChatBackend> make_scripted_backend(
    const BackendConfig& config, const std::string& base_dir) {
  if (config.extra.contains("rules")) {
    return std::make_shared<ScriptedBackend>(ScriptedBackend::from_json(config.extra));
  }
  if (config.fixture.empty()) {
    throw ConfigError("scripted backend " + config.backend_id +
                      " needs a fixture or inline rules");
  }
  std::filesystem::path path(config.fixture);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  return std::make_shared<ScriptedBackend>(ScriptedBackend::from_file(path.string()));
}

BackendRegistry::BackendRegistry() {
  factories_["openai"] = [](const BackendConfig& c, const std::string&) {
    return make_openai_backend(c);
  };
  factories_["scripted"] = make_scripted_backend;
}

void BackendRegistry::add(const std::string& id,
                          std::shared_ptr<const ChatBackend> backend) {
  std::unique_lock lock(mu_);
  if (!backends_.emplace(id, std::move(backend)).second) {
    throw ConfigError("duplicate backend id '" + id + "'");
  }
}

std::shared_ptr<const ChatBackend> BackendRegistry::get(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = backends_.find(id);
  if (it == backends_.end()) throw UnknownBackendError(id);
  return it->second;
}

bool BackendRegistry::contains(const std::string& id) const {
  std::shared_lock lock(mu_);
  return backends_.contains(id);
}

std::vector<std::string> BackendRegistry::ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : backends_) out.push_back(id);
  return out;
}

void BackendRegistry::register_kind(const std::string& kind,
                                    BackendFactory factory) {
  std::unique_lock lock(mu_);
  factories_[kind] = std::move(factory);
}

void BackendRegistry::add_from_config(const BackendConfig& config,
                                      const std::string& base_dir) {
  BackendFactory factory;
  {
    std::shared_lock lock(mu_);
    auto it = factories_.find(config.kind);
    if (it == factories_.end()) {
      throw ConfigError("unknown backend kind '" + config.kind + "'");
    }
    factory = it->second;
  }
  add(config.backend_id, factory(config, base_dir));
}

}  // namespace vsp::llm
