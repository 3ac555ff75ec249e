// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edupsy/agents/agents.hpp"
#include "edupsy/classifiers/scorer.hpp"
#include "edupsy/core/session_store.hpp"
#include "edupsy/orchestrator/trace.hpp"

namespace edupsy::orchestrator {

struct PipelineOptions {
  std::string refusal_message = "Sorry, I can't help with that request.";
  std::string apology_message =
      "抱歉，服务暂时不可用，请稍后再试。Sorry, the service is temporarily unavailable.";
  std::chrono::milliseconds timeout{30000};
  std::function<TimestampMs()> clock;  // defaults to wall clock
};

struct ChatResult {
  std::string session_id;
  std::string request_id;
  std::string reply;
  RouteDecision decision;
  std::vector<agents::UsedContext> contexts;
  bool degraded = false;
  std::string note;
  std::optional<ErrorKind> error;  // backend failure or timeout; reply is the apology
  PipelineTrace trace;
};

struct StageCounters {
  std::atomic<std::uint64_t> requests{0};
  std::atomic<std::uint64_t> refused{0};
  std::atomic<std::uint64_t> education{0};
  std::atomic<std::uint64_t> psychology{0};
  std::atomic<std::uint64_t> errors{0};
};

/// safety -> intent -> agent for one message. Thread-safe.
class Pipeline {
 public:
  Pipeline(std::shared_ptr<SessionStore> sessions,
           std::shared_ptr<const classifiers::SafetyGate> safety,
           std::shared_ptr<const classifiers::IntentRouter> intent,
           std::shared_ptr<const agents::EducationAgent> education,
           std::shared_ptr<const agents::PsychologyAgent> psychology, PipelineOptions options,
           std::shared_ptr<TraceSink> sink = nullptr);

  /// No session id creates a session. Throws validation for blank text and
  /// not_found for an unknown session id; both before any stage runs.
  ChatResult handle_message(const std::optional<std::string>& session_id, std::string_view text);

  const StageCounters& counters() const { return counters_; }
  SessionStore& sessions() { return *sessions_; }
  const PipelineOptions& options() const { return options_; }

 private:
  TimestampMs now() const;
  std::string next_request_id();

  std::shared_ptr<SessionStore> sessions_;
  std::shared_ptr<const classifiers::SafetyGate> safety_;
  std::shared_ptr<const classifiers::IntentRouter> intent_;
  std::shared_ptr<const agents::EducationAgent> education_;
  std::shared_ptr<const agents::PsychologyAgent> psychology_;
  PipelineOptions options_;
  std::shared_ptr<TraceSink> sink_;
  std::atomic<std::uint64_t> next_request_{1};
  StageCounters counters_;
};

}  // namespace edupsy::orchestrator
