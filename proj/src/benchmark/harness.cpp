// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/benchmark/harness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "edupsy/benchmark/table.hpp"
#include "edupsy/core/errors.hpp"

namespace edupsy::benchmark {

std::int64_t accuracy_tenths(std::size_t correct, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::validation, "accuracy of an empty group");
  if (correct > n) throw Error(ErrorKind::validation, "correct exceeds item count");
  const auto c = static_cast<std::int64_t>(correct);
  const auto t = static_cast<std::int64_t>(n);
  return (2000 * c + t) / (2 * t);
}

std::string format_tenths(std::int64_t tenths) {
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

namespace {

ItemOutcome answer_item(const BenchmarkItem& item, const agents::EducationAgent& agent) {
  ItemOutcome out;
  out.id = item.id;
  try {
    const auto reply = agent.answer(format_mcq_prompt(item));
    out.contexts_used = reply.contexts_used();
    if (reply.error) {
      out.error = reply.note.empty() ? "backend unavailable" : reply.note;
    } else {
      out.predicted = extract_answer(reply.text);
    }
  } catch (const Error& e) {
    out.error = e.what();
  }
  out.correct = out.error.empty() && out.predicted == item.answer;
  return out;
}

int subject_rank(Level level, const std::string& subject) {
  const auto& canon = canonical_subjects(level);
  const auto it = std::find(canon.begin(), canon.end(), subject);
  return it == canon.end() ? static_cast<int>(canon.size()) : static_cast<int>(it - canon.begin());
}

}  // namespace

std::vector<SubjectReport> summarize(const std::vector<BenchmarkItem>& items,
                                     const std::vector<ItemOutcome>& outcomes) {
  if (items.size() != outcomes.size()) {
    throw Error(ErrorKind::validation, "outcome count does not match item count");
  }
  std::map<std::pair<Level, std::string>, SubjectReport> groups;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& r = groups[{items[i].level, items[i].subject}];
    r.level = items[i].level;
    r.subject = items[i].subject;
    ++r.n;
    if (outcomes[i].correct) ++r.correct;
  }
  std::vector<SubjectReport> reports;
  for (auto& [key, r] : groups) {
    r.tenths = accuracy_tenths(r.correct, r.n);
    reports.push_back(r);
  }
  std::sort(reports.begin(), reports.end(), [](const SubjectReport& a, const SubjectReport& b) {
    if (a.level != b.level) return a.level < b.level;
    const int ra = subject_rank(a.level, a.subject);
    const int rb = subject_rank(b.level, b.subject);
    if (ra != rb) return ra < rb;
    return a.subject < b.subject;
  });
  return reports;
}

SuiteRun run_suite(const std::vector<BenchmarkItem>& items, const agents::EducationAgent& agent,
                   RunOptions options) {
  SuiteRun run;
  run.items.resize(items.size());
  const std::size_t workers = std::clamp<std::size_t>(options.parallelism, 1, std::max<std::size_t>(1, items.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) run.items[i] = answer_item(items[i], agent);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
          run.items[i] = answer_item(items[i], agent);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  run.reports = summarize(items, run.items);
  return run;
}

SuiteLookup::SuiteLookup(std::vector<BenchmarkItem> items) : items_(std::move(items)) {
  for (const auto& item : items_) prompts_.push_back(format_mcq_prompt(item));
}

const BenchmarkItem* SuiteLookup::find(const agents::GenerationRequest& request) const {
  if (request.messages.empty()) return nullptr;
  const std::string& text = request.messages.back().text;
  const BenchmarkItem* best = nullptr;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (prompts_[i].size() > best_len && text.find(prompts_[i]) != std::string::npos) {
      best = &items_[i];
      best_len = prompts_[i].size();
    }
  }
  return best;
}

std::string OracleBackend::generate(const agents::GenerationRequest& request) {
  const BenchmarkItem* item = lookup_.find(request);
  return item ? std::string(1, item->answer) : std::string("?");
}

ConstantBackend::ConstantBackend(char letter) : letter_(letter) {
  if (letter < 'A' || letter > 'D') throw Error(ErrorKind::validation, "constant letter must be A-D");
}

std::string RetrievalDependentBackend::generate(const agents::GenerationRequest& request) {
  const BenchmarkItem* item = lookup_.find(request);
  if (!item) return "?";
  const auto& ids = request.context_ids;
  const bool found =
      item->gold_doc && std::find(ids.begin(), ids.end(), *item->gold_doc) != ids.end();
  if (found) return std::string(1, item->answer);
  return std::string(1, static_cast<char>('A' + (item->answer - 'A' + 1) % 4));
}

}  // namespace edupsy::benchmark
