// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edupsy::benchmark {

enum class Level { primary, middle, high };

std::string_view to_string(Level level) noexcept;
std::optional<Level> parse_level(std::string_view s) noexcept;

struct BenchmarkItem {
  std::string id;
  Level level = Level::primary;
  std::string subject;
  std::string question;
  std::array<std::string, 4> choices;
  char answer = 'A';
  std::optional<std::string> gold_doc;  // corpus entry holding the answer, if any
};

/// Suite JSONL, one item per line:
///   {"id", "level", "subject", "question", "choices": [4 strings], "answer": "A".."D"
///    [, "gold_doc": "..."]}
/// Throws Error(validation) naming the line for any malformed item, a
/// duplicate id, or an empty suite.
std::vector<BenchmarkItem> parse_suite(std::string_view text, const std::string& source = "suite");
std::vector<BenchmarkItem> load_suite(const std::filesystem::path& path);
void save_suite(const std::vector<BenchmarkItem>& items, const std::filesystem::path& path);

/// Question, the four choices as "A. ..." lines, then a single-letter
/// instruction. Line breaks inside the question or a choice become spaces.
std::string format_mcq_prompt(const BenchmarkItem& item);

/// First standalone A-D (either case). Any character other than an ASCII
/// letter or digit counts as a boundary. Returns '\0' when absent.
char extract_answer(std::string_view reply);

}  // namespace edupsy::benchmark
