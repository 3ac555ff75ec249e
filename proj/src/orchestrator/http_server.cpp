// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/orchestrator/http_server.hpp"

#include <httplib.h>

#include "edupsy/core/errors.hpp"

namespace edupsy::orchestrator {
namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

void reply_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, ErrorKind kind, const std::string& message) {
  reply_json(res, http_status_for(kind),
             {{"error", std::string(to_string(kind))}, {"message", message}});
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    reply_error(res, e.kind(), e.what());
  } catch (const std::exception& e) {
    reply_json(res, 500, {{"error", "internal"}, {"message", e.what()}});
  }
}

}  // namespace

int http_status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::format:
      return 400;
    case ErrorKind::not_found:
      return 404;
    case ErrorKind::timeout:
      return 504;
    case ErrorKind::unavailable:
    case ErrorKind::backend_unavailable:
    case ErrorKind::retrieval_unavailable:
      return 503;
    default:
      return 500;
  }
}

nlohmann::ordered_json chat_response_json(const ChatResult& r) {
  nlohmann::ordered_json j;
  j["session_id"] = r.session_id;
  j["reply"] = r.reply;
  j["route"] = std::string(to_string(r.decision.route));
  nlohmann::ordered_json contexts = nlohmann::ordered_json::array();
  for (const auto& c : r.contexts) contexts.push_back({{"id", c.id}, {"title", c.title}});
  j["contexts"] = std::move(contexts);
  j["safety"] = {{"safe", r.decision.safe}};
  j["request_id"] = r.request_id;
  j["degraded"] = r.degraded;
  if (r.error) j["error"] = std::string(to_string(*r.error));
  return j;
}

nlohmann::ordered_json session_json(const Session& s) {
  nlohmann::ordered_json turns = nlohmann::ordered_json::array();
  for (const auto& t : s.turns) {
    nlohmann::ordered_json turn;
    turn["role"] = std::string(to_string(t.role));
    turn["text"] = t.text;
    turn["ts"] = t.timestamp;
    if (t.refused) turn["refused"] = true;
    turns.push_back(std::move(turn));
  }
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["created_at"] = s.created_at;
  j["turns"] = std::move(turns);
  return j;
}

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& svr = *server_;

  svr.Post("/v1/chat", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      nlohmann::json body;
      try {
        body = nlohmann::json::parse(req.body);
      } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::format, "request body is not valid JSON");
      }
      if (!body.is_object() || !body.contains("message") || !body["message"].is_string()) {
        throw Error(ErrorKind::validation, "field 'message' must be a string");
      }
      std::optional<std::string> session_id;
      if (body.contains("session_id") && !body["session_id"].is_null()) {
        if (!body["session_id"].is_string()) {
          throw Error(ErrorKind::validation, "field 'session_id' must be a string");
        }
        session_id = body["session_id"].get<std::string>();
      }
      const auto result = service_.chat(session_id, body["message"].get<std::string>());
      reply_json(res, 200, chat_response_json(result));
    });
  });

  svr.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { reply_json(res, 200, service_.health()); });
  });

  svr.Get(R"(/v1/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply_json(res, 200, session_json(service_.session(req.matches[1]))); });
  });

  svr.Post("/v1/admin/reindex", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      const std::size_t n = service_.reindex();
      reply_json(res, 200, {{"status", "ok"}, {"documents", n}});
    });
  });
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::listen(const std::string& host, int port) {
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorKind::io, "cannot bind " + host + ":" + std::to_string(port));
  }
  server_->listen_after_bind();
}

int HttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::io, "cannot bind " + host);
  } else if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorKind::io, "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace edupsy::orchestrator
