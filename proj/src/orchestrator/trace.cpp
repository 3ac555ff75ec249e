// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/orchestrator/trace.hpp"

#include "edupsy/core/errors.hpp"

namespace edupsy::orchestrator {

nlohmann::ordered_json PipelineTrace::to_json() const {
  nlohmann::ordered_json j;
  j["request_id"] = request_id;
  j["session_id"] = session_id;
  j["ts"] = timestamp;
  j["decision"] = {{"safety_score", decision.safety_score},
                   {"safe", decision.safe},
                   {"intent_score", decision.intent_score},
                   {"route", std::string(to_string(decision.route))},
                   {"latency_ms", decision.latency_ms}};
  if (retrieval_ids) j["retrieval_ids"] = *retrieval_ids;
  if (rerank) {
    nlohmann::ordered_json ids = nlohmann::ordered_json::array();
    nlohmann::ordered_json scores = nlohmann::ordered_json::array();
    for (const auto& r : *rerank) {
      ids.push_back(r.id);
      scores.push_back(r.score);
    }
    j["rerank_ids"] = std::move(ids);
    j["rerank_scores"] = std::move(scores);
  }
  if (prompt_hash) j["prompt_hash"] = *prompt_hash;
  j["reply_summary"] = reply_summary;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  for (const auto& [stage, ms] : timings_ms) timings[stage] = ms;
  j["timings_ms"] = std::move(timings);
  j["degraded"] = degraded;
  if (!note.empty()) j["note"] = note;
  if (error) j["error"] = *error;
  return j;
}

TraceSink::TraceSink(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::app | std::ios::binary);
  if (!out_) throw Error(ErrorKind::io, "cannot open trace log " + path.string());
}

void TraceSink::write(const PipelineTrace& trace) {
  const std::string line = trace.to_json().dump() + "\n";
  std::lock_guard lock(mutex_);
  out_ << line;
  out_.flush();
}

}  // namespace edupsy::orchestrator
