// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <memory>

#include "edupsy/core/config.hpp"
#include "edupsy/core/types.hpp"
#include "test_util.hpp"

namespace edupsy::testing {

/// Service configuration over the bundled data, with all writable state in dir.
inline ServiceConfig bundled_config(const TempDir& dir) {
  ServiceConfig c;
  c.safety_model = data_dir() / "models" / "safety.json";
  c.intent_model = data_dir() / "models" / "intent.json";
  c.corpus = data_dir() / "corpus.jsonl";
  c.templates = data_dir() / "templates.txt";
  c.index = dir / "corpus.hnsw";
  c.session_log = dir / "sessions.jsonl";
  c.trace_log = dir / "traces.jsonl";
  return c;
}

/// Deterministic clock advancing one millisecond per reading.
inline std::function<TimestampMs()> stepping_clock(TimestampMs start = 1'700'000'000'000) {
  auto t = std::make_shared<std::atomic<TimestampMs>>(start);
  return [t] { return t->fetch_add(1); };
}

}  // namespace edupsy::testing
