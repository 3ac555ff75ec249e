// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <thread>

#include "edupsy/orchestrator/service.hpp"

namespace httplib {
class Server;
}

namespace edupsy::orchestrator {

/// JSON over HTTP:
///   POST /v1/chat            {"session_id"?: "...", "message": "..."}
///   GET  /v1/health
///   GET  /v1/sessions/{id}
///   POST /v1/admin/reindex
/// Errors reply {"error": kind, "message": text} with a matching status.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Blocks until stop(). Throws Error(io) if the port cannot be bound.
  void listen(const std::string& host, int port);

  /// Binds (port 0 picks a free port), serves on a background thread and
  /// returns the bound port.
  int start(const std::string& host, int port = 0);
  void stop();

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

/// Response body for a chat result.
nlohmann::ordered_json chat_response_json(const ChatResult& result);
nlohmann::ordered_json session_json(const Session& session);
int http_status_for(ErrorKind kind);

}  // namespace edupsy::orchestrator
