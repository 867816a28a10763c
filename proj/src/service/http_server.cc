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

#include "vsp/service/http_server.h"

#include <functional>
#include <stdexcept>

#include "httplib.h"

namespace vsp::service {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

IdempotencyCache::Reply guarded(const std::function<json()>& work) {
  try {
    return {200, work().dump()};
  } catch (const std::exception& e) {
    const ErrorReply err = classify_error(e);
    return {err.status, err.body.dump()};
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw ServiceError(400, "bad_request", std::string("body is not JSON: ") + e.what());
  }
}

}  // namespace

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;
  IdempotencyCache cache;
  bool bound = false;

  explicit Impl(Service& s) : service(s) {}

  void send(httplib::Response& res, const IdempotencyCache::Reply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, kJson);
  }

  // Read-only route.
  void get(const std::string& pattern, std::function<json(const httplib::Request&)> fn) {
    server.Get(pattern, [this, fn](const httplib::Request& req, httplib::Response& res) {
      send(res, guarded([&] { return fn(req); }));
    });
  }

  // Mutating route; replays by Idempotency-Key when the client sends one.
  void post(const std::string& pattern, std::function<json(const httplib::Request&)> fn) {
    server.Post(pattern, [this, fn](const httplib::Request& req, httplib::Response& res) {
      auto work = [&] { return guarded([&] { return fn(req); }); };
      const std::string key = req.get_header_value("Idempotency-Key");
      send(res, key.empty() ? work() : cache.run("POST " + req.path, key, work));
    });
  }
};

HttpServer::HttpServer(Service& service, std::size_t threads)
    : impl_(std::make_unique<Impl>(service)) {
  auto& s = impl_->service;
  impl_->server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  // Without SO_REUSEPORT a second server on a busy port fails to bind
  // instead of silently sharing it.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  impl_->get("/health", [&s](const httplib::Request&) { return s.health(); });
  impl_->get("/cases", [&s](const httplib::Request&) { return s.list_cases(); });
  impl_->post("/cases", [&s](const httplib::Request& r) { return s.add_case(parse_body(r)); });
  impl_->post("/sessions",
              [&s](const httplib::Request& r) { return s.create_session(parse_body(r)); });
  impl_->post(R"(/sessions/([^/]+)/messages)", [&s](const httplib::Request& r) {
    return s.post_message(r.matches[1], parse_body(r));
  });
  impl_->post(R"(/sessions/([^/]+)/end)",
              [&s](const httplib::Request& r) { return s.end_session(r.matches[1]); });
  impl_->get(R"(/sessions/([^/]+)/transcript)",
             [&s](const httplib::Request& r) { return s.transcript(r.matches[1]); });
  impl_->post("/eval/arena", [&s](const httplib::Request& r) { return s.arena(parse_body(r)); });
  impl_->post("/eval/vd", [&s](const httplib::Request& r) { return s.vd_eval(parse_body(r)); });
  impl_->server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const json body = {{"error", res.status == 404 ? "not_found" : "http_error"},
                       {"message", "no route"}};
    res.set_content(body.dump(), kJson);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound_port = port;
  if (port == 0) {
    bound_port = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound_port = -1;
  }
  if (bound_port < 0) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port) +
                             " (address in use or not available)");
  }
  impl_->bound = true;
  return bound_port;
}

void HttpServer::listen() {
  if (!impl_->bound) throw std::logic_error("HttpServer::listen before bind");
  impl_->server.listen_after_bind();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace vsp::service
