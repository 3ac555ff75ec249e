// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edupsy/agents/agents.hpp"
#include "edupsy/agents/backend.hpp"
#include "edupsy/benchmark/suite.hpp"

namespace edupsy::benchmark {

/// Percent accuracy in tenths, rounded half up: 753 means 75.3.
std::int64_t accuracy_tenths(std::size_t correct, std::size_t n);
std::string format_tenths(std::int64_t tenths);

struct SubjectReport {
  Level level = Level::primary;
  std::string subject;
  std::size_t n = 0;
  std::size_t correct = 0;
  std::int64_t tenths = 0;

  double accuracy() const { return static_cast<double>(tenths) / 10.0; }
};

struct ItemOutcome {
  std::string id;
  char predicted = '\0';  // '\0' when no letter was found
  bool correct = false;
  std::vector<std::string> contexts_used;
  std::string error;      // backend failure, scored incorrect
};

struct SuiteRun {
  std::vector<SubjectReport> reports;  // level order, then canonical subject order
  std::vector<ItemOutcome> items;      // input order
};

struct RunOptions {
  std::size_t parallelism = 1;
};

/// Answers every item through the education agent on its MCQ prompt.
SuiteRun run_suite(const std::vector<BenchmarkItem>& items, const agents::EducationAgent& agent,
                   RunOptions options = {});

/// Groups outcomes into per-(level, subject) reports.
std::vector<SubjectReport> summarize(const std::vector<BenchmarkItem>& items,
                                     const std::vector<ItemOutcome>& outcomes);

/// Finds the suite item whose MCQ prompt appears in a request.
class SuiteLookup {
 public:
  explicit SuiteLookup(std::vector<BenchmarkItem> items);
  const BenchmarkItem* find(const agents::GenerationRequest& request) const;

 private:
  std::vector<BenchmarkItem> items_;
  std::vector<std::string> prompts_;
};

/// Replies with the gold letter of the item in the prompt.
class OracleBackend final : public agents::GenerationBackend {
 public:
  explicit OracleBackend(std::vector<BenchmarkItem> items) : lookup_(std::move(items)) {}
  std::string name() const override { return "oracle"; }
  std::string generate(const agents::GenerationRequest& request) override;

 private:
  SuiteLookup lookup_;
};

/// Always replies with the same letter.
class ConstantBackend final : public agents::GenerationBackend {
 public:
  explicit ConstantBackend(char letter = 'A');
  std::string name() const override { return std::string("constant-") + letter_; }
  std::string generate(const agents::GenerationRequest&) override { return std::string(1, letter_); }

 private:
  char letter_;
};

/// Correct iff the item's gold doc is among the prompt's contexts; otherwise
/// answers the letter after the gold one.
class RetrievalDependentBackend final : public agents::GenerationBackend {
 public:
  explicit RetrievalDependentBackend(std::vector<BenchmarkItem> items) : lookup_(std::move(items)) {}
  std::string name() const override { return "retrieval-dependent"; }
  std::string generate(const agents::GenerationRequest& request) override;

 private:
  SuiteLookup lookup_;
};

}  // namespace edupsy::benchmark
