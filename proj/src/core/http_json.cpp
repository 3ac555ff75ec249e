// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/core/http_json.hpp"

#include <httplib.h>

#include "edupsy/core/errors.hpp"

namespace edupsy {

Endpoint parse_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos || url.compare(0, scheme, "http") != 0) {
    throw Error(ErrorKind::config, "endpoint must be an http:// URL: '" + url + "'");
  }
  const auto slash = url.find('/', scheme + 3);
  Endpoint ep;
  ep.base = url.substr(0, slash);
  ep.path = slash == std::string::npos ? "/" : url.substr(slash);
  if (ep.base.size() <= scheme + 3) throw Error(ErrorKind::config, "endpoint has no host: '" + url + "'");
  return ep;
}

nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         std::chrono::milliseconds timeout) {
  const Endpoint ep = parse_endpoint(url);
  httplib::Client client(ep.base);
  const auto secs = timeout.count() / 1000;
  const auto usecs = (timeout.count() % 1000) * 1000;
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  auto res = client.Post(ep.path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorKind::unavailable,
                "POST " + url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorKind::unavailable, "POST " + url + " returned HTTP " + std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::unavailable, "POST " + url + " returned invalid JSON: " + ex.what());
  }
}

}  // namespace edupsy
