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

#include "vsp/service/service.h"

// REST routes over Service:
//   GET  /health
//   POST /cases                      GET /cases
//   POST /sessions
//   POST /sessions/{id}/messages     POST /sessions/{id}/end
//   GET  /sessions/{id}/transcript
//   POST /eval/arena                 POST /eval/vd
// POST requests carrying an Idempotency-Key header replay the first reply
// for that key and route.
namespace vsp::service {

class HttpServer {
 public:
  // Worker threads bound how many requests, and so backend calls, run at once.
  explicit HttpServer(Service& service, std::size_t threads = 32);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws
  // std::runtime_error when the address is unavailable.
  int bind(const std::string& host, int port);
  // Serves until stop(). Requires bind().
  void listen();
  // Blocks until listen() accepts connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vsp::service
