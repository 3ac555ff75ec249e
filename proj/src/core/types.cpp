// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/core/types.hpp"

#include <chrono>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::user: return "user";
    case Role::assistant: return "assistant";
    case Role::system: return "system";
  }
  return "user";
}

std::string_view to_string(Route route) noexcept {
  switch (route) {
    case Route::refused: return "refused";
    case Route::education: return "education";
    case Route::psychology: return "psychology";
  }
  return "refused";
}

std::optional<Role> parse_role(std::string_view s) noexcept {
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  if (s == "system") return Role::system;
  return std::nullopt;
}

std::optional<Route> parse_route(std::string_view s) noexcept {
  if (s == "refused") return Route::refused;
  if (s == "education") return Route::education;
  if (s == "psychology") return Route::psychology;
  return std::nullopt;
}

bool satisfies_invariants(const RouteDecision& d, double safety_threshold,
                          double intent_threshold) noexcept {
  if (d.safety_score < 0.0 || d.safety_score > 1.0) return false;
  if (d.intent_score < 0.0 || d.intent_score > 1.0) return false;
  if (d.latency_ms < 0) return false;
  if ((d.route == Route::refused) != !d.safe) return false;
  if (d.safe != (d.safety_score < safety_threshold)) return false;
  if (d.safe) {
    return (d.route == Route::education) == (d.intent_score >= intent_threshold);
  }
  return true;
}

void validate_turn(const ChatTurn& turn) {
  if (turn.role != Role::system && text::is_blank(turn.text)) {
    throw Error(ErrorKind::validation,
                std::string(to_string(turn.role)) + " turn text must not be empty");
  }
}

TimestampMs now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace edupsy
