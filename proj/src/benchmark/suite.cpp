// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/benchmark/suite.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::benchmark {
namespace {

bool ascii_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string one_line(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == '\n' || c == '\r') {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty() && out.back() != ' ') out += ' ';
    pending_space = false;
    out += c;
  }
  return text::trim(out);
}

}  // namespace

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::primary: return "primary";
    case Level::middle: return "middle";
    case Level::high: return "high";
  }
  return "primary";
}

std::optional<Level> parse_level(std::string_view s) noexcept {
  if (s == "primary") return Level::primary;
  if (s == "middle") return Level::middle;
  if (s == "high") return Level::high;
  return std::nullopt;
}

std::vector<BenchmarkItem> parse_suite(std::string_view text, const std::string& source) {
  std::vector<BenchmarkItem> items;
  std::set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_blank(line)) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    auto bad = [&](const std::string& why) { return Error(ErrorKind::validation, where + why); };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw bad("not valid JSON");
    }
    if (!j.is_object()) throw bad("expected a JSON object");
    auto str = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_string()) throw bad(std::string("missing string field '") + key + "'");
      return j[key].get<std::string>();
    };
    BenchmarkItem item;
    item.id = str("id");
    if (text::is_blank(item.id)) throw bad("empty id");
    const auto level = parse_level(str("level"));
    if (!level) throw bad("level must be primary, middle or high");
    item.level = *level;
    item.subject = str("subject");
    if (text::is_blank(item.subject)) throw bad("empty subject");
    item.question = str("question");
    if (text::is_blank(item.question)) throw bad("empty question");
    if (!j.contains("choices") || !j["choices"].is_array()) throw bad("missing choices array");
    if (j["choices"].size() != 4) {
      throw bad("expected exactly 4 choices, found " + std::to_string(j["choices"].size()));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j["choices"][i].is_string()) throw bad("choices must be strings");
      item.choices[i] = j["choices"][i].get<std::string>();
    }
    const std::string answer = str("answer");
    if (answer.size() != 1 || answer[0] < 'A' || answer[0] > 'D') throw bad("answer must be one of A-D");
    item.answer = answer[0];
    if (j.contains("gold_doc") && !j["gold_doc"].is_null()) item.gold_doc = str("gold_doc");
    if (!ids.insert(item.id).second) throw bad("duplicate id '" + item.id + "'");
    items.push_back(std::move(item));
  }
  if (items.empty()) throw Error(ErrorKind::validation, source + ": suite has no items");
  return items;
}

std::vector<BenchmarkItem> load_suite(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::not_found, "suite file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str(), path.string());
}

void save_suite(const std::vector<BenchmarkItem>& items, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  for (const auto& item : items) {
    nlohmann::ordered_json j;
    j["id"] = item.id;
    j["level"] = std::string(to_string(item.level));
    j["subject"] = item.subject;
    j["question"] = item.question;
    j["choices"] = item.choices;
    j["answer"] = std::string(1, item.answer);
    if (item.gold_doc) j["gold_doc"] = *item.gold_doc;
    out << j.dump() << '\n';
  }
}

std::string format_mcq_prompt(const BenchmarkItem& item) {
  std::string out = one_line(item.question);
  for (std::size_t i = 0; i < 4; ++i) {
    out += '\n';
    out += static_cast<char>('A' + i);
    out += ". ";
    out += one_line(item.choices[i]);
  }
  out += "\n请只回答一个选项字母。Answer with a single letter.";
  return out;
}

char extract_answer(std::string_view reply) {
  for (std::size_t i = 0; i < reply.size(); ++i) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(reply[i])));
    if (c < 'A' || c > 'D') continue;
    const bool left = i == 0 || !ascii_alnum(reply[i - 1]);
    const bool right = i + 1 == reply.size() || !ascii_alnum(reply[i + 1]);
    if (left && right) return c;
  }
  return '\0';
}

}  // namespace edupsy::benchmark
