// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "edupsy/agents/prompt.hpp"

namespace edupsy::agents {

/// Text generator behind both agents. Implementations return non-empty text
/// or throw Error(backend_unavailable).
class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;
  virtual std::string name() const = 0;
  virtual std::string generate(const GenerationRequest& request) = 0;
};

/// Deterministic backend; the reply is a pure function of the request.
///  - an "answer:X" marker (X in A-D, any case) in the last message yields "X";
///  - otherwise, with contexts, a reply citing each as [doc:ID];
///  - otherwise an echo of the question with the history length.
class ScriptedMockBackend final : public GenerationBackend {
 public:
  std::string name() const override { return "mock"; }
  std::string generate(const GenerationRequest& request) override;
};

/// POST {"system": "...", "messages": [{"role", "text"}]} -> {"text": "..."}.
class RemoteBackend final : public GenerationBackend {
 public:
  RemoteBackend(std::string url, std::chrono::milliseconds timeout);
  std::string name() const override { return "remote"; }
  std::string generate(const GenerationRequest& request) override;

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

/// Counts calls into a wrapped backend.
class CountingBackend final : public GenerationBackend {
 public:
  explicit CountingBackend(std::shared_ptr<GenerationBackend> inner);
  std::string name() const override { return inner_->name(); }
  std::string generate(const GenerationRequest& request) override;
  std::uint64_t calls() const { return calls_.load(); }

 private:
  std::shared_ptr<GenerationBackend> inner_;
  std::atomic<std::uint64_t> calls_{0};
};

/// Doc ids cited as [doc:ID] in `text`, in order of first appearance.
std::vector<std::string> cited_doc_ids(std::string_view text);

/// First "answer:X" marker letter in `text`, or '\0'.
char answer_marker(std::string_view text);

}  // namespace edupsy::agents
