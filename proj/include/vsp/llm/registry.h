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

#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsp/llm/chat.h"

namespace vsp::llm {

struct BackendConfig {
  std::string backend_id;
  std::string kind = "openai";  // "openai", "scripted" or a registered kind
  std::string endpoint;
  std::string model;
  std::string auth_env;
  double timeout_s = 30.0;
  int max_retries = 3;
  int max_concurrency = 4;
  std::string fixture;  // scripted: path, relative to the config file
  nlohmann::json extra = nlohmann::json::object();
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BackendConfig backend_config_from_json(const nlohmann::json& value);

using BackendFactory = std::function<std::shared_ptr<const ChatBackend>(
    const BackendConfig& config, const std::string& base_dir)>;

// Thread-safe map from backend_id to a shared backend handle.
class BackendRegistry {
 public:
  BackendRegistry();

  // Throws ConfigError for a duplicate id.
  void add(const std::string& id, std::shared_ptr<const ChatBackend> backend);
  // Throws UnknownBackendError.
  std::shared_ptr<const ChatBackend> get(const std::string& id) const;
  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;

  void register_kind(const std::string& kind, BackendFactory factory);
  // Builds through the factory for config.kind and adds it.
  void add_from_config(const BackendConfig& config, const std::string& base_dir);

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<const ChatBackend>> backends_;
  std::map<std::string, BackendFactory> factories_;
};

std::shared_ptr<const ChatBackend> make_openai_backend(const BackendConfig& config);
std::shared_ptr<const ChatBackend> make_scripted_backend(
    const BackendConfig& config, const std::string& base_dir);

}  // namespace vsp::llm
