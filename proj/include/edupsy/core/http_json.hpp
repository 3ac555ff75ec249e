// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <nlohmann/json.hpp>
#include <string>

namespace edupsy {

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;  // begins with '/'
};

/// Splits "http://host:port/path" into base and path. Throws Error(config).
Endpoint parse_endpoint(const std::string& url);

/// POSTs a JSON body and parses the JSON reply. Any transport failure, non-2xx
/// status or unparseable body throws Error(unavailable).
nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         std::chrono::milliseconds timeout);

}  // namespace edupsy
