// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/orchestrator/pipeline.hpp"

#include <cstdio>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::orchestrator {
namespace {

constexpr std::size_t kSummaryChars = 80;

}  // namespace

Pipeline::Pipeline(std::shared_ptr<SessionStore> sessions,
                   std::shared_ptr<const classifiers::SafetyGate> safety,
                   std::shared_ptr<const classifiers::IntentRouter> intent,
                   std::shared_ptr<const agents::EducationAgent> education,
                   std::shared_ptr<const agents::PsychologyAgent> psychology,
                   PipelineOptions options, std::shared_ptr<TraceSink> sink)
    : sessions_(std::move(sessions)),
      safety_(std::move(safety)),
      intent_(std::move(intent)),
      education_(std::move(education)),
      psychology_(std::move(psychology)),
      options_(std::move(options)),
      sink_(std::move(sink)) {
  if (!sessions_) throw Error(ErrorKind::config, "pipeline needs a session store");
  if (text::is_blank(options_.refusal_message)) {
    throw Error(ErrorKind::config, "config key 'refusal_message': must not be empty");
  }
}

TimestampMs Pipeline::now() const { return options_.clock ? options_.clock() : now_ms(); }

std::string Pipeline::next_request_id() {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "req-%08llu",
                static_cast<unsigned long long>(next_request_.fetch_add(1)));
  return buf;
}

ChatResult Pipeline::handle_message(const std::optional<std::string>& session_id,
                                    std::string_view text) {
  if (text::is_blank(text)) throw Error(ErrorKind::validation, "message must not be empty");
  Session session = session_id ? sessions_->get(*session_id) : sessions_->create_session();

  ChatResult result;
  result.session_id = session.id;
  result.request_id = next_request_id();
  ++counters_.requests;

  PipelineTrace& trace = result.trace;
  trace.request_id = result.request_id;
  trace.session_id = session.id;
  const TimestampMs start = now();
  trace.timestamp = start;
  const TimestampMs deadline = start + options_.timeout.count();
  auto stage_done = [&](const char* stage, TimestampMs since) {
    const TimestampMs t = now();
    trace.timings_ms.emplace_back(stage, std::max<TimestampMs>(0, t - since));
    return t;
  };

  RouteDecision& d = result.decision;
  const std::string message(text);

  // Safety. Anything but a positive verdict refuses.
  TimestampMs t = start;
  try {
    if (!safety_) throw Error(ErrorKind::unavailable, "safety model not loaded");
    const auto v = safety_->classify(message);
    d.safety_score = v.score;
    d.safe = v.safe;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation) throw;
    d.safety_score = 1.0;
    d.safe = false;
    result.degraded = true;
    result.note = std::string("safety check failed closed: ") + e.what();
  }
  t = stage_done("safety", t);

  auto finish = [&](std::string reply_text, bool refused) {
    ChatTurn user{Role::user, message, 0, refused};
    ChatTurn assistant{Role::assistant, reply_text, 0, refused};
    sessions_->append_exchange(result.session_id, std::move(user), std::move(assistant));
    result.reply = std::move(reply_text);
    d.latency_ms = 0;
    for (const auto& [stage, ms] : trace.timings_ms) {
      if (stage == "safety" || stage == "intent") d.latency_ms += ms;
    }
    stage_done("total", start);
    trace.decision = d;
    trace.reply_summary = text::truncate_chars(result.reply, kSummaryChars);
    trace.degraded = result.degraded;
    trace.note = result.note;
    if (result.error) trace.error = std::string(to_string(*result.error));
    if (sink_) sink_->write(trace);
  };

  if (!d.safe) {
    d.route = Route::refused;
    ++counters_.refused;
    finish(options_.refusal_message, true);
    return result;
  }

  // Intent. An unavailable router sends the message to the psychology agent.
  try {
    if (!intent_) throw Error(ErrorKind::unavailable, "intent model not loaded");
    const auto v = intent_->classify(message);
    d.intent_score = v.score;
    d.route = v.route;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation) throw;
    d.intent_score = 0.0;
    d.route = Route::psychology;
    result.degraded = true;
    result.note = std::string("intent routing fell back to psychology: ") + e.what();
  }
  t = stage_done("intent", t);

  agents::AgentReply reply;
  try {
    if (now() > deadline) throw Error(ErrorKind::timeout, "request deadline exceeded");
    if (d.route == Route::education) {
      if (!education_) throw Error(ErrorKind::backend_unavailable, "education agent not configured");
      ++counters_.education;
      reply = education_->answer(message);
      trace.retrieval_ids = reply.retrieval_attempted
                                ? std::optional(reply.retrieval_ids)
                                : std::nullopt;
      std::vector<RerankEntry> rerank;
      for (const auto& c : reply.contexts) rerank.push_back({c.id, c.rerank_score});
      if (reply.retrieval_attempted) trace.rerank = std::move(rerank);
    } else {
      if (!psychology_) throw Error(ErrorKind::backend_unavailable, "psychology agent not configured");
      ++counters_.psychology;
      reply = psychology_->answer(session.turns, message);
    }
    trace.prompt_hash = reply.prompt_hash;
    if (!reply.error && now() > deadline) {
      reply.error = ErrorKind::timeout;
      reply.note = "request deadline exceeded";
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::timeout && e.kind() != ErrorKind::backend_unavailable) throw;
    reply.error = e.kind();
    reply.note = e.what();
  }
  stage_done("agent", t);

  result.contexts = reply.contexts;
  if (reply.degraded) result.degraded = true;
  if (!reply.note.empty()) result.note = result.note.empty() ? reply.note : result.note + "; " + reply.note;
  std::string reply_text = reply.text;
  if (reply.error) {
    result.error = reply.error;
    result.contexts.clear();
    ++counters_.errors;
    reply_text = options_.apology_message;
  }
  finish(std::move(reply_text), false);
  return result;
}

}  // namespace edupsy::orchestrator
