// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edupsy/core/types.hpp"

namespace edupsy::orchestrator {

struct RerankEntry {
  std::string id;
  double score = 0.0;
};

/// Audit record for one request. Optional stages are absent when not reached.
struct PipelineTrace {
  std::string request_id;
  std::string session_id;
  TimestampMs timestamp = 0;
  RouteDecision decision;
  std::optional<std::vector<std::string>> retrieval_ids;
  std::optional<std::vector<RerankEntry>> rerank;
  std::optional<std::string> prompt_hash;
  std::string reply_summary;
  std::vector<std::pair<std::string, std::int64_t>> timings_ms;  // stage order
  bool degraded = false;
  std::string note;
  std::optional<std::string> error;

  nlohmann::ordered_json to_json() const;
};

/// Appends one JSON line per trace; lines never interleave.
class TraceSink {
 public:
  explicit TraceSink(const std::filesystem::path& path);
  void write(const PipelineTrace& trace);

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace edupsy::orchestrator
