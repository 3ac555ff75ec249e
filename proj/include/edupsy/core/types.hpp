// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edupsy {

/// Milliseconds since the Unix epoch.
using TimestampMs = std::int64_t;

enum class Role { user, assistant, system };
enum class Route { refused, education, psychology };

std::string_view to_string(Role role) noexcept;
std::string_view to_string(Route route) noexcept;
std::optional<Role> parse_role(std::string_view s) noexcept;
std::optional<Route> parse_route(std::string_view s) noexcept;

struct ChatTurn {
  Role role = Role::user;
  std::string text;
  TimestampMs timestamp = 0;
  // Set on user turns rejected by the safety gate and on their canned reply.
  bool refused = false;
};

struct Session {
  std::string id;
  std::vector<ChatTurn> turns;
  TimestampMs created_at = 0;
};

/// Audited outcome of the safety and intent stages for one message.
struct RouteDecision {
  double safety_score = 1.0;  // probability unsafe
  bool safe = false;
  double intent_score = 0.0;  // probability education
  Route route = Route::refused;
  std::int64_t latency_ms = 0;
};

/// Checks the route/safe/threshold coupling. The intent threshold only
/// constrains safe decisions; refused messages never reach the intent stage.
bool satisfies_invariants(const RouteDecision& d, double safety_threshold,
                          double intent_threshold) noexcept;

/// Validates a turn in isolation (role-dependent non-empty text).
void validate_turn(const ChatTurn& turn);

TimestampMs now_ms();

}  // namespace edupsy
