// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "edupsy/agents/agents.hpp"
#include "edupsy/agents/backend.hpp"
#include "edupsy/agents/prompt.hpp"
#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"
#include "edupsy/retrieval/embedder.hpp"
#include "edupsy/retrieval/rerank.hpp"
#include "edupsy/retrieval/retriever.hpp"
#include "test_util.hpp"

namespace edupsy::agents {
namespace {

using retrieval::Document;

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::io;
}

class RecordingBackend final : public GenerationBackend {
 public:
  explicit RecordingBackend(std::string reply = "ok") : reply_(std::move(reply)) {}
  std::string name() const override { return "recording"; }
  std::string generate(const GenerationRequest& request) override {
    requests.push_back(request);
    return reply_;
  }
  std::vector<GenerationRequest> requests;

 private:
  std::string reply_;
};

class DownBackend final : public GenerationBackend {
 public:
  std::string name() const override { return "down"; }
  std::string generate(const GenerationRequest&) override {
    throw Error(ErrorKind::backend_unavailable, "connection refused");
  }
};

std::shared_ptr<retrieval::Retriever> corpus_retriever() {
  auto r = std::make_shared<retrieval::Retriever>(std::make_shared<retrieval::HashingEmbedder>(64),
                                                  std::make_shared<retrieval::OverlapReranker>(),
                                                  retrieval::HnswParams{});
  r->reindex(retrieval::load_corpus_jsonl(testing::data_dir() / "corpus.jsonl"));
  return r;
}

std::vector<ChatTurn> dialogue(std::size_t n) {
  std::vector<ChatTurn> turns;
  for (std::size_t i = 0; i < n; ++i) {
    turns.push_back({i % 2 == 0 ? Role::user : Role::assistant, "turn " + std::to_string(i),
                     static_cast<TimestampMs>(i), false});
  }
  return turns;
}

// ---- templates ----

TEST(Templates, ShippedFileMatchesDefaults) {
  const auto loaded = PromptTemplates::load(testing::data_dir() / "templates.txt");
  const auto def = PromptTemplates::defaults();
  EXPECT_EQ(loaded.education_system, def.education_system);
  EXPECT_EQ(loaded.education_user, def.education_user);
  EXPECT_EQ(loaded.psychology_system, def.psychology_system);
  EXPECT_EQ(loaded.psychology_user, def.psychology_user);
  EXPECT_EQ(PromptTemplates::parse(def.to_text()).to_text(), def.to_text());
}

TEST(Templates, ParseErrors) {
  const std::string good = PromptTemplates::defaults().to_text();
  EXPECT_EQ(kind_of([] { PromptTemplates::parse("[other]\nx\n"); }), ErrorKind::format);
  EXPECT_EQ(kind_of([] { PromptTemplates::parse("stray text\n"); }), ErrorKind::format);
  EXPECT_EQ(kind_of([&] { PromptTemplates::parse(good + "\n[psychology.user]\n{question}\n"); }),
            ErrorKind::format);
  std::string no_q = good;
  no_q.replace(no_q.rfind("{question}"), 10, "nothing");
  EXPECT_EQ(kind_of([&] { PromptTemplates::parse(no_q); }), ErrorKind::format);
}

// ---- prompts ----

TEST(Prompt, ExcerptsTruncatedOnCharacterBoundary) {
  PromptBuilder builder;
  std::string long_text;
  for (int i = 0; i < 10000; ++i) long_text += "勾";
  const auto p = builder.education("勾股定理？", {{"big", "长文", long_text}});
  ASSERT_EQ(p.context_blocks.size(), 1u);
  EXPECT_LE(text::char_length(p.context_blocks[0].excerpt), 800u);
  EXPECT_EQ(text::encode_utf8(text::decode_utf8(p.context_blocks[0].excerpt)), p.context_blocks[0].excerpt);
  EXPECT_LE(text::char_length(builder.render(p)), 6000u);
}

TEST(Prompt, EducationRendersContextsInOrder) {
  PromptBuilder builder;
  const auto p = builder.education("Q?", {{"a", "A", "first"}, {"b", "B", "second"}});
  const auto user = builder.render_user(p);
  EXPECT_EQ(user, "Reference material:\n[doc:a] A\nfirst\n\n[doc:b] B\nsecond\n\nQuestion: Q?");
  EXPECT_EQ(builder.request(p).context_ids, (std::vector<std::string>{"a", "b"}));
  const auto empty = builder.education("Q?", {});
  EXPECT_NE(builder.render_user(empty).find("(none)"), std::string::npos);
}

TEST(Prompt, PsychologyKeepsLastWindowTurns) {
  PromptBuilder builder;
  const auto turns = dialogue(25);
  const auto p = builder.psychology(turns, "now?", 10);
  ASSERT_EQ(p.history.size(), 10u);
  EXPECT_EQ(p.history.front().text, "turn 15");
  EXPECT_EQ(p.history.back().text, "turn 24");
  const auto req = builder.request(p);
  ASSERT_EQ(req.messages.size(), 11u);
  EXPECT_EQ(req.messages.back().text, "now?");
  EXPECT_TRUE(req.context_ids.empty());
}

TEST(Prompt, RefusedTurnsNeverReachHistory) {
  PromptBuilder builder;
  auto turns = dialogue(4);
  turns.push_back({Role::user, "forbidden", 10, true});
  turns.push_back({Role::assistant, "refusal", 11, true});
  const auto p = builder.psychology(turns, "next", 10);
  ASSERT_EQ(p.history.size(), 4u);
  for (const auto& t : p.history) EXPECT_FALSE(t.refused);
  EXPECT_EQ(builder.render(p).find("forbidden"), std::string::npos);
}

TEST(Prompt, BuildingIsPure) {
  PromptBuilder builder;
  const auto turns = dialogue(6);
  const auto a = builder.psychology(turns, "q", 4);
  const auto b = builder.psychology(turns, "q", 4);
  EXPECT_EQ(builder.render(a), builder.render(b));
  EXPECT_EQ(builder.hash(a), builder.hash(b));
  EXPECT_NE(builder.hash(a), builder.hash(builder.psychology(turns, "q2", 4)));
  EXPECT_EQ(builder.hash(a).size(), 16u);
}

TEST(Prompt, OverBudgetDropsOldestHistoryFirst) {
  PromptBudgets budgets;
  budgets.prompt_chars = 400;
  PromptBuilder builder(PromptTemplates::defaults(), budgets);
  std::vector<ChatTurn> turns;
  for (int i = 0; i < 10; ++i) {
    turns.push_back({i % 2 == 0 ? Role::user : Role::assistant,
                     "message number " + std::to_string(i) + " with padding text", i, false});
  }
  const auto p = builder.psychology(turns, "latest", 10);
  EXPECT_LT(p.history.size(), 10u);
  EXPECT_FALSE(p.history.empty());
  EXPECT_NE(p.history.back().text.find("number 9"), std::string::npos);
  EXPECT_LE(text::char_length(builder.render(p)), 400u);
}

TEST(Prompt, BudgetSmallerThanSystemPromptIsConfigError) {
  PromptBudgets budgets;
  budgets.prompt_chars = 10;
  PromptBuilder builder(PromptTemplates::defaults(), budgets);
  try {
    builder.education("q", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::config);
    EXPECT_NE(std::string(e.what()).find("prompt_budget"), std::string::npos);
  }
}

// ---- backends ----

TEST(Backend, MockContract) {
  ScriptedMockBackend mock;
  GenerationRequest req;
  req.messages = {{Role::user, "题目……answer:c"}};
  EXPECT_EQ(mock.generate(req), "C");
  req.messages = {{Role::user, "what?"}};
  req.context_ids = {"a", "b"};
  EXPECT_EQ(mock.generate(req), "Based on [doc:a] [doc:b].");
  req.context_ids.clear();
  req.messages = {{Role::user, "hi"}, {Role::assistant, "hello"}, {Role::user, "  我很累  "}};
  EXPECT_EQ(mock.generate(req), "I hear you: \"我很累\" (history turns: 2)");
}

TEST(Backend, Helpers) {
  EXPECT_EQ(cited_doc_ids("see [doc:x] and [doc:y], again [doc:x]"),
            (std::vector<std::string>{"x", "y"}));
  EXPECT_TRUE(cited_doc_ids("[doc:unterminated").empty());
  EXPECT_EQ(answer_marker("ANSWER:b"), 'B');
  EXPECT_EQ(answer_marker("answer:E"), '\0');
}

TEST(Backend, RemoteWithoutServerIsBackendUnavailable) {
  RemoteBackend remote("http://127.0.0.1:1/generate", std::chrono::milliseconds(300));
  EXPECT_EQ(kind_of([&] { remote.generate({"s", {{Role::user, "q"}}, {}}); }),
            ErrorKind::backend_unavailable);
}

TEST(Backend, CountingWrapsInner) {
  CountingBackend counting(std::make_shared<ScriptedMockBackend>());
  counting.generate({"", {{Role::user, "x"}}, {}});
  counting.generate({"", {{Role::user, "y"}}, {}});
  EXPECT_EQ(counting.calls(), 2u);
  EXPECT_EQ(counting.name(), "mock");
}

// ---- education agent ----

TEST(EducationAgent, PythagoreanQuestionUsesMatchingDocument) {
  EducationAgent agent(corpus_retriever(), std::make_shared<ScriptedMockBackend>(), PromptBuilder());
  const auto reply = agent.answer("勾股定理是什么？怎么证明？");
  EXPECT_EQ(reply.route, Route::education);
  EXPECT_FALSE(reply.degraded);
  EXPECT_TRUE(reply.retrieval_attempted);
  EXPECT_LE(reply.contexts.size(), 3u);
  const auto used = reply.contexts_used();
  EXPECT_NE(std::find(used.begin(), used.end(), "math-pythagorean"), used.end());
  EXPECT_EQ(reply.retrieval_ids.size(), 50u);
  EXPECT_NE(reply.text.find("[doc:math-pythagorean]"), std::string::npos);
  EXPECT_TRUE(reply.invalid_citations.empty());
  EXPECT_FALSE(reply.prompt_hash.empty());
}

TEST(EducationAgent, ContextsAreSubsetOfHits) {
  EducationAgent agent(corpus_retriever(), std::make_shared<ScriptedMockBackend>(), PromptBuilder(),
                       {10, 3});
  const auto reply = agent.answer("氧化还原反应中电子转移");
  EXPECT_EQ(reply.retrieval_ids.size(), 10u);
  for (const auto& id : reply.contexts_used()) {
    EXPECT_NE(std::find(reply.retrieval_ids.begin(), reply.retrieval_ids.end(), id),
              reply.retrieval_ids.end());
  }
}

TEST(EducationAgent, EmptyIndexDegradesWithoutContexts) {
  auto r = std::make_shared<retrieval::Retriever>(std::make_shared<retrieval::HashingEmbedder>(64),
                                                  std::make_shared<retrieval::OverlapReranker>(),
                                                  retrieval::HnswParams{});
  r->reindex({});
  auto backend = std::make_shared<RecordingBackend>("plain answer");
  EducationAgent agent(r, backend, PromptBuilder());
  const auto reply = agent.answer("什么是光合作用？");
  EXPECT_TRUE(reply.degraded);
  EXPECT_TRUE(reply.contexts.empty());
  EXPECT_EQ(reply.text, "plain answer");
  ASSERT_EQ(backend->requests.size(), 1u);
  EXPECT_TRUE(backend->requests[0].context_ids.empty());
}

TEST(EducationAgent, MissingRetrieverDegrades) {
  EducationAgent agent(nullptr, std::make_shared<ScriptedMockBackend>(), PromptBuilder());
  const auto reply = agent.answer("x?");
  EXPECT_TRUE(reply.degraded);
  EXPECT_FALSE(reply.text.empty());
}

TEST(EducationAgent, InventedCitationIsCounted) {
  EducationAgent agent(corpus_retriever(), std::make_shared<RecordingBackend>("see [doc:made-up]"),
                       PromptBuilder());
  const auto reply = agent.answer("勾股定理");
  EXPECT_EQ(reply.invalid_citations, (std::vector<std::string>{"made-up"}));
  EXPECT_EQ(agent.citation_violations(), 1u);
}

TEST(EducationAgent, BackendFailureLeavesTextEmpty) {
  EducationAgent agent(corpus_retriever(), std::make_shared<DownBackend>(), PromptBuilder());
  const auto reply = agent.answer("勾股定理");
  EXPECT_TRUE(reply.text.empty());
  ASSERT_TRUE(reply.error.has_value());
  EXPECT_EQ(*reply.error, ErrorKind::backend_unavailable);
}

TEST(EducationAgent, RejectsBadCascadeSizes) {
  EXPECT_EQ(kind_of([] {
              EducationAgent(nullptr, std::make_shared<ScriptedMockBackend>(), PromptBuilder(), {3, 5});
            }),
            ErrorKind::config);
}

// ---- psychology agent ----

TEST(PsychologyAgent, NeverTouchesRetrieval) {
  auto retriever = corpus_retriever();
  const auto before = retriever->reads();
  auto backend = std::make_shared<RecordingBackend>("I understand.");
  PsychologyAgent agent(backend, PromptBuilder(), 10);
  const auto turns = dialogue(25);
  const auto reply = agent.answer(turns, "最近压力很大");
  EXPECT_EQ(reply.route, Route::psychology);
  EXPECT_TRUE(reply.contexts.empty());
  EXPECT_FALSE(reply.retrieval_attempted);
  EXPECT_EQ(retriever->reads(), before);
  ASSERT_EQ(backend->requests.size(), 1u);
  EXPECT_EQ(backend->requests[0].messages.size(), 11u);
}

TEST(PsychologyAgent, BackendFailureReported) {
  PsychologyAgent agent(std::make_shared<DownBackend>(), PromptBuilder(), 10);
  const auto reply = agent.answer({}, "hello");
  EXPECT_TRUE(reply.error.has_value());
}

}  // namespace
}  // namespace edupsy::agents
