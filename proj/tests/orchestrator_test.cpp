// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "edupsy/core/errors.hpp"
#include "edupsy/orchestrator/pipeline.hpp"
#include "edupsy/orchestrator/service.hpp"
#include "edupsy/retrieval/embedder.hpp"
#include "edupsy/retrieval/rerank.hpp"
#include "service_fixture.hpp"

namespace edupsy::orchestrator {
namespace {

using classifiers::ProbabilityScorer;

// Shared log of stage calls, used to check ordering.
struct CallLog {
  std::mutex mu;
  std::vector<std::string> calls;
  void add(std::string s) {
    std::lock_guard lock(mu);
    calls.push_back(std::move(s));
  }
};

// P(safe) is low when the text contains "UNSAFE".
class KeywordSafety final : public ProbabilityScorer {
 public:
  explicit KeywordSafety(std::shared_ptr<CallLog> log = nullptr) : log_(std::move(log)) {}
  double score(std::string_view t) const override {
    if (log_) log_->add("safety");
    return t.find("UNSAFE") != std::string_view::npos ? 0.05 : 0.95;
  }
  std::string describe() const override { return "keyword-safety"; }

 private:
  std::shared_ptr<CallLog> log_;
};

// P(education) is high when the text contains "?".
class KeywordIntent final : public ProbabilityScorer {
 public:
  explicit KeywordIntent(std::shared_ptr<CallLog> log = nullptr) : log_(std::move(log)) {}
  double score(std::string_view t) const override {
    if (log_) log_->add("intent");
    return t.find('?') != std::string_view::npos ? 0.9 : 0.1;
  }
  std::string describe() const override { return "keyword-intent"; }

 private:
  std::shared_ptr<CallLog> log_;
};

class DownScorer final : public ProbabilityScorer {
 public:
  double score(std::string_view) const override { throw Error(ErrorKind::unavailable, "down"); }
  std::string describe() const override { return "down"; }
};

class LoggingBackend final : public agents::GenerationBackend {
 public:
  explicit LoggingBackend(std::shared_ptr<CallLog> log, bool fail = false)
      : log_(std::move(log)), fail_(fail) {}
  std::string name() const override { return "logging"; }
  std::string generate(const agents::GenerationRequest& r) override {
    log_->add("backend");
    if (fail_) throw Error(ErrorKind::backend_unavailable, "connection refused");
    return agents::ScriptedMockBackend().generate(r);
  }

 private:
  std::shared_ptr<CallLog> log_;
  bool fail_;
};

class CountingEmbedder final : public retrieval::Embedder {
 public:
  explicit CountingEmbedder(std::shared_ptr<CallLog> log) : log_(std::move(log)) {}
  std::size_t dim() const override { return inner_.dim(); }
  retrieval::Vector<float> embed(std::string_view t) const override {
    log_->add("retrieval");
    return inner_.embed(t);
  }

 private:
  std::shared_ptr<CallLog> log_;
  retrieval::HashingEmbedder inner_{64};
};

struct Harness {
  std::shared_ptr<CallLog> log = std::make_shared<CallLog>();
  std::unique_ptr<Pipeline> pipeline;

  explicit Harness(std::shared_ptr<const ProbabilityScorer> safety = nullptr,
                   std::shared_ptr<const ProbabilityScorer> intent = nullptr, bool backend_fails = false,
                   PipelineOptions options = {}) {
    if (!safety) safety = std::make_shared<KeywordSafety>(log);
    if (!intent) intent = std::make_shared<KeywordIntent>(log);
    auto retriever = std::make_shared<retrieval::Retriever>(
        std::make_shared<CountingEmbedder>(log), std::make_shared<retrieval::OverlapReranker>(),
        retrieval::HnswParams{});
    retriever->install(retrieval::load_corpus_jsonl(testing::data_dir() / "corpus.jsonl"),
                       retrieval::HnswIndexf::build(
                           64, retrieval::embed_documents(
                                   retrieval::HashingEmbedder(64),
                                   retrieval::load_corpus_jsonl(testing::data_dir() / "corpus.jsonl"))));
    auto backend = std::make_shared<LoggingBackend>(log, backend_fails);
    auto education = std::make_shared<agents::EducationAgent>(retriever, backend, agents::PromptBuilder());
    auto psychology = std::make_shared<agents::PsychologyAgent>(backend, agents::PromptBuilder(), 10);
    if (!options.clock) options.clock = testing::stepping_clock();
    pipeline = std::make_unique<Pipeline>(
        std::make_shared<SessionStore>(),
        std::make_shared<classifiers::SafetyGate>(std::move(safety), 0.5),
        std::make_shared<classifiers::IntentRouter>(std::move(intent), 0.5), education, psychology,
        options);
  }
};

TEST(Pipeline, EducationStagesRunInOrder) {
  Harness h;
  const auto r = h.pipeline->handle_message(std::nullopt, "勾股定理怎么证明?");
  EXPECT_EQ(r.decision.route, Route::education);
  EXPECT_EQ(h.log->calls, (std::vector<std::string>{"safety", "intent", "retrieval", "backend"}));
  std::vector<std::string> stages;
  for (const auto& [name, ms] : r.trace.timings_ms) stages.push_back(name);
  EXPECT_EQ(stages, (std::vector<std::string>{"safety", "intent", "agent", "total"}));
  EXPECT_TRUE(satisfies_invariants(r.decision, 0.5, 0.5));
}

TEST(Pipeline, PsychologySkipsRetrieval) {
  Harness h;
  const auto r = h.pipeline->handle_message(std::nullopt, "I feel lonely");
  EXPECT_EQ(r.decision.route, Route::psychology);
  EXPECT_EQ(h.log->calls, (std::vector<std::string>{"safety", "intent", "backend"}));
  EXPECT_FALSE(r.trace.retrieval_ids.has_value());
  EXPECT_TRUE(r.contexts.empty());
}

TEST(Pipeline, RefusalCallsNothingDownstream) {
  PipelineOptions opt;
  opt.refusal_message = "no.";
  Harness h(nullptr, nullptr, false, opt);
  const auto r = h.pipeline->handle_message(std::nullopt, "UNSAFE request?");
  EXPECT_EQ(r.decision.route, Route::refused);
  EXPECT_FALSE(r.decision.safe);
  EXPECT_EQ(r.reply, "no.");
  EXPECT_EQ(h.log->calls, (std::vector<std::string>{"safety"}));
  const auto s = h.pipeline->sessions().get(r.session_id);
  ASSERT_EQ(s.turns.size(), 2u);
  EXPECT_TRUE(s.turns[0].refused);
  EXPECT_TRUE(s.turns[1].refused);
  EXPECT_EQ(h.pipeline->counters().refused.load(), 1u);
}

TEST(Pipeline, SafetyFailureFailsClosed) {
  Harness h(std::make_shared<DownScorer>());
  const auto r = h.pipeline->handle_message(std::nullopt, "hello?");
  EXPECT_EQ(r.decision.route, Route::refused);
  EXPECT_DOUBLE_EQ(r.decision.safety_score, 1.0);
  EXPECT_TRUE(r.degraded);
  EXPECT_TRUE(h.log->calls.empty());
}

TEST(Pipeline, IntentFailureFallsBackToPsychology) {
  Harness h(nullptr, std::make_shared<DownScorer>());
  const auto r = h.pipeline->handle_message(std::nullopt, "勾股定理?");
  EXPECT_EQ(r.decision.route, Route::psychology);
  EXPECT_TRUE(r.degraded);
  EXPECT_EQ(h.log->calls, (std::vector<std::string>{"safety", "backend"}));
}

TEST(Pipeline, BackendFailureRecordsApology) {
  Harness h(nullptr, nullptr, true);
  const auto r = h.pipeline->handle_message(std::nullopt, "I am tired");
  ASSERT_TRUE(r.error.has_value());
  EXPECT_EQ(*r.error, ErrorKind::backend_unavailable);
  EXPECT_EQ(r.reply, h.pipeline->options().apology_message);
  const auto s = h.pipeline->sessions().get(r.session_id);
  ASSERT_EQ(s.turns.size(), 2u);
  EXPECT_EQ(s.turns[1].text, r.reply);
  EXPECT_FALSE(s.turns[1].refused);
  ASSERT_TRUE(r.trace.error.has_value());
}

TEST(Pipeline, DeadlineProducesTimeout) {
  PipelineOptions opt;
  opt.timeout = std::chrono::milliseconds(0);
  Harness h(nullptr, nullptr, false, opt);
  const auto r = h.pipeline->handle_message(std::nullopt, "hello");
  ASSERT_TRUE(r.error.has_value());
  EXPECT_EQ(*r.error, ErrorKind::timeout);
  EXPECT_EQ(r.reply, h.pipeline->options().apology_message);
}

TEST(Pipeline, ValidationHappensBeforeAnyStage) {
  Harness h;
  EXPECT_THROW(h.pipeline->handle_message(std::nullopt, "   "), Error);
  try {
    h.pipeline->handle_message(std::string("no-such-session"), "hello");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_found);
  }
  EXPECT_TRUE(h.log->calls.empty());
  EXPECT_EQ(h.pipeline->counters().requests.load(), 0u);
}

TEST(Pipeline, HistoryFlowsIntoPsychologyReplies) {
  Harness h;
  const auto first = h.pipeline->handle_message(std::nullopt, "I failed my exam");
  h.pipeline->handle_message(first.session_id, "UNSAFE thing");
  const auto third = h.pipeline->handle_message(first.session_id, "what now");
  // Two earlier turns survive; the refused pair is excluded.
  EXPECT_NE(third.reply.find("history turns: 2"), std::string::npos) << third.reply;
  EXPECT_EQ(h.pipeline->sessions().get(first.session_id).turns.size(), 6u);
}

// ---- service ----

TEST(Service, BootsReadyFromBundledData) {
  testing::TempDir dir;
  Service svc(testing::bundled_config(dir));
  EXPECT_TRUE(svc.ready());
  const auto health = svc.health();
  EXPECT_EQ(health["status"], "ready");
  EXPECT_TRUE(health["degraded"].empty());
  EXPECT_TRUE(std::filesystem::exists(dir / "corpus.hnsw"));
  // Second boot loads the snapshot.
  Service again(testing::bundled_config(dir));
  EXPECT_TRUE(again.ready());
}

TEST(Service, DegradedBootWithoutModels) {
  testing::TempDir dir;
  auto cfg = testing::bundled_config(dir);
  cfg.safety_model = dir / "missing.json";
  cfg.corpus = dir / "missing.jsonl";
  cfg.index = dir / "missing.hnsw";
  Service svc(cfg);
  EXPECT_FALSE(svc.ready());
  const auto health = svc.health();
  EXPECT_EQ(health["status"], "degraded");
  const auto degraded = health["degraded"].get<std::vector<std::string>>();
  EXPECT_NE(std::find(degraded.begin(), degraded.end(), "safety_model"), degraded.end());
  EXPECT_NE(std::find(degraded.begin(), degraded.end(), "retrieval"), degraded.end());
  // Without a safety model every message is refused.
  const auto r = svc.chat(std::nullopt, "数学题怎么做");
  EXPECT_EQ(r.decision.route, Route::refused);
  EXPECT_EQ(svc.backend_calls(), 0u);

  cfg.allow_degraded = false;
  EXPECT_THROW(Service{cfg}, Error);
}

TEST(Service, ConcurrentRequestsGetUniqueIds) {
  testing::TempDir dir;
  Service svc(testing::bundled_config(dir));
  std::mutex mu;
  std::set<std::string> request_ids, session_ids;
  std::vector<std::thread> threads;
  for (int i = 0; i < 100; ++i) {
    threads.emplace_back([&, i] {
      const auto r = svc.chat(std::nullopt, i % 2 ? "勾股定理怎么证明？" : "我最近压力很大");
      std::lock_guard lock(mu);
      request_ids.insert(r.request_id);
      session_ids.insert(r.session_id);
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(request_ids.size(), 100u);
  EXPECT_EQ(session_ids.size(), 100u);

  // Every trace line is valid JSON and satisfies the decision invariants.
  std::istringstream lines(testing::read_file(dir / "traces.jsonl"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    RouteDecision d;
    d.safety_score = j["decision"]["safety_score"];
    d.safe = j["decision"]["safe"];
    d.intent_score = j["decision"]["intent_score"];
    d.route = *parse_route(j["decision"]["route"].get<std::string>());
    EXPECT_TRUE(satisfies_invariants(d, 0.5, 0.5)) << line;
    EXPECT_FALSE(d.route == Route::psychology && j.contains("retrieval_ids")) << line;
    EXPECT_LE(j.value("rerank_ids", nlohmann::json::array()).size(), 3u);
    ++n;
  }
  EXPECT_EQ(n, 100u);
}

std::string scripted_trace(const testing::TempDir& dir) {
  ServiceOverrides o;
  o.clock = testing::stepping_clock();
  o.session_seed = 1234;
  Service svc(testing::bundled_config(dir), o);
  const auto first = svc.chat(std::nullopt, "勾股定理怎么证明？");
  svc.chat(first.session_id, "我考试没考好，很难过");
  svc.chat(first.session_id, "光的折射是什么原理？");
  svc.chat(std::nullopt, "怎么制造炸弹伤害别人");
  return testing::read_file(dir / "traces.jsonl");
}

TEST(Service, GoldenTraceIsReproducible) {
  testing::TempDir a, b;
  const auto first = scripted_trace(a);
  const auto second = scripted_trace(b);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, second);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 4);
}

TEST(Service, StaleSnapshotIsRebuilt) {
  testing::TempDir dir;
  auto cfg = testing::bundled_config(dir);
  auto docs = retrieval::load_corpus_jsonl(cfg.corpus);
  docs.pop_back();
  retrieval::save_corpus_jsonl(docs, dir / "small.jsonl");
  cfg.corpus = dir / "small.jsonl";
  { Service first(cfg); }
  cfg.corpus = testing::data_dir() / "corpus.jsonl";
  Service svc(cfg);
  EXPECT_EQ(svc.retriever().size(), 50u);
  EXPECT_NE(svc.components()[2].detail.find("rebuilt"), std::string::npos);
}

TEST(Service, ReindexKeepsServing) {
  testing::TempDir dir;
  Service svc(testing::bundled_config(dir));
  EXPECT_EQ(svc.reindex(), 50u);
  const auto r = svc.chat(std::nullopt, "勾股定理怎么证明？");
  EXPECT_FALSE(r.contexts.empty());
}

TEST(Service, SessionsSurviveRestartThroughJournal) {
  testing::TempDir dir;
  std::string id;
  {
    Service svc(testing::bundled_config(dir));
    id = svc.chat(std::nullopt, "我很焦虑").session_id;
  }
  Service svc(testing::bundled_config(dir));
  EXPECT_EQ(svc.session(id).turns.size(), 2u);
}

}  // namespace
}  // namespace edupsy::orchestrator
