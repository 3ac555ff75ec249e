// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edupsy/agents/backend.hpp"
#include "edupsy/agents/prompt.hpp"
#include "edupsy/core/errors.hpp"
#include "edupsy/retrieval/retriever.hpp"

namespace edupsy::agents {

struct UsedContext {
  std::string id;
  std::string title;
  double rerank_score = 0.0;
  double similarity = 0.0;
};

struct AgentReply {
  std::string text;
  Route route = Route::education;
  std::vector<UsedContext> contexts;        // empty for psychology
  std::vector<std::string> retrieval_ids;   // first-stage hits, education only
  bool retrieval_attempted = false;
  std::string prompt_hash;
  std::int64_t retrieval_latency_ms = 0;
  std::int64_t backend_latency_ms = 0;
  bool degraded = false;                    // answered without retrieval or rerank
  std::string note;
  std::optional<ErrorKind> error;           // backend failure; text is empty
  std::vector<std::string> invalid_citations;

  std::vector<std::string> contexts_used() const;
};

struct EducationOptions {
  std::size_t retrieve_k = 100;
  std::size_t rerank_m = 3;
};

/// embed -> search(retrieve_k) -> rerank(rerank_m) -> assemble -> generate.
/// Single-turn: the question alone is retrieved on and sent.
class EducationAgent {
 public:
  EducationAgent(std::shared_ptr<const retrieval::Retriever> retriever,
                 std::shared_ptr<GenerationBackend> backend, PromptBuilder builder,
                 EducationOptions options = {});

  AgentReply answer(std::string_view question) const;

  /// Replies that cited an id outside their contexts.
  std::uint64_t citation_violations() const { return citation_violations_.load(); }

 private:
  std::shared_ptr<const retrieval::Retriever> retriever_;
  std::shared_ptr<GenerationBackend> backend_;
  PromptBuilder builder_;
  EducationOptions options_;
  mutable std::atomic<std::uint64_t> citation_violations_{0};
};

/// Multi-turn agent over a history window. Holds no retriever.
class PsychologyAgent {
 public:
  PsychologyAgent(std::shared_ptr<GenerationBackend> backend, PromptBuilder builder,
                  std::size_t window = 10);

  AgentReply answer(std::span<const ChatTurn> history, std::string_view question) const;

 private:
  std::shared_ptr<GenerationBackend> backend_;
  PromptBuilder builder_;
  std::size_t window_;
};

}  // namespace edupsy::agents
