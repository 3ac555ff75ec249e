// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edupsy/core/types.hpp"
#include "edupsy/retrieval/document.hpp"

namespace edupsy::agents {

struct ContextBlock {
  std::string doc_id;
  std::string title;
  std::string excerpt;
};

struct AssembledPrompt {
  Route route = Route::education;
  std::string system;
  std::vector<ContextBlock> context_blocks;  // rerank order
  std::vector<ChatTurn> history;             // oldest first
  std::string question;
};

struct Message {
  Role role = Role::user;
  std::string text;
};

/// What a generation backend receives.
struct GenerationRequest {
  std::string system;
  std::vector<Message> messages;          // history, then the rendered question
  std::vector<std::string> context_ids;   // ids of context blocks, in order
};

/// Versioned prompt templates. Text file layout:
///
///   version = 1
///   [education.system]
///   ...
///   [education.user]
///   ... {contexts} ... {question} ...
///
/// Placeholders: {question}, {contexts}, {history}. Unknown braces are kept
/// verbatim.
struct PromptTemplates {
  int version = 1;
  std::string education_system;
  std::string education_user;
  std::string psychology_system;
  std::string psychology_user;

  static PromptTemplates defaults();
  /// Throws Error(format) on unknown sections or a user template without
  /// {question}.
  static PromptTemplates parse(std::string_view text);
  static PromptTemplates load(const std::filesystem::path& path);
  std::string to_text() const;
};

struct PromptBudgets {
  std::size_t excerpt_chars = 800;
  std::size_t prompt_chars = 6000;
};

/// Pure prompt assembly. Over-budget prompts are cut in this order: oldest
/// history turns, then context excerpts from the last block backwards, then
/// the question tail.
class PromptBuilder {
 public:
  explicit PromptBuilder(PromptTemplates templates = PromptTemplates::defaults(),
                         PromptBudgets budgets = {});

  AssembledPrompt education(std::string_view question,
                            const std::vector<retrieval::Document>& contexts) const;

  /// Uses the last `window` turns of `history`. Refused turns and system
  /// turns are skipped so rejected input never reaches a generator.
  AssembledPrompt psychology(std::span<const ChatTurn> history, std::string_view question,
                             std::size_t window) const;

  /// The user template with placeholders filled.
  std::string render_user(const AssembledPrompt& prompt) const;
  /// Full transcript: system, history, rendered question. This is the text
  /// that is budgeted and hashed.
  std::string render(const AssembledPrompt& prompt) const;
  GenerationRequest request(const AssembledPrompt& prompt) const;
  /// Hex FNV-1a of render().
  std::string hash(const AssembledPrompt& prompt) const;

  const PromptTemplates& templates() const { return templates_; }
  const PromptBudgets& budgets() const { return budgets_; }

 private:
  void fit(AssembledPrompt& prompt) const;

  PromptTemplates templates_;
  PromptBudgets budgets_;
};

std::string render_contexts(const std::vector<ContextBlock>& blocks);
std::string render_history(const std::vector<ChatTurn>& history);

}  // namespace edupsy::agents
