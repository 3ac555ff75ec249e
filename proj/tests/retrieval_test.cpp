// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "edupsy/core/errors.hpp"
#include "edupsy/retrieval/brute_force.hpp"
#include "edupsy/retrieval/embedder.hpp"
#include "edupsy/retrieval/rerank.hpp"
#include "edupsy/retrieval/retriever.hpp"
#include "test_util.hpp"

namespace edupsy::retrieval {
namespace {

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

class FailingReranker final : public Reranker {
 public:
  std::vector<double> score(std::string_view, const std::vector<const Document*>&) const override {
    throw Error(ErrorKind::unavailable, "reranker down");
  }
};

class FailingEmbedder final : public Embedder {
 public:
  std::size_t dim() const override { return 64; }
  Vector<float> embed(std::string_view) const override {
    throw Error(ErrorKind::unavailable, "embedder down");
  }
};

RerankCandidate candidate(std::string id, std::string text, double sim) {
  return {{id, sim}, {id, "", std::move(text)}};
}

std::shared_ptr<Retriever> corpus_retriever() {
  auto r = std::make_shared<Retriever>(std::make_shared<HashingEmbedder>(64),
                                       std::make_shared<OverlapReranker>(), HnswParams{});
  r->reindex(load_corpus_jsonl(testing::data_dir() / "corpus.jsonl"));
  return r;
}

// ---- embedder ----

TEST(Embedder, UnitNormAndDeterministic) {
  HashingEmbedder e(64);
  const auto a = e.embed("勾股定理的证明");
  EXPECT_EQ(a.size(), 64);
  EXPECT_NEAR(a.norm(), 1.0f, 1e-5f);
  EXPECT_EQ(a, HashingEmbedder(64).embed("勾股定理的证明"));
  EXPECT_EQ(kind_of([&] { e.embed("   "); }), ErrorKind::validation);
}

TEST(Embedder, SharedCharactersRankHigher) {
  HashingEmbedder e(64);
  const auto q = e.embed("二次方程 求根");
  const double near = similarity(q, e.embed("一元二次方程的求根公式"));
  const double far = similarity(q, e.embed("光的折射现象与透镜成像"));
  EXPECT_GT(near, far);
}

TEST(Embedder, RemoteWithoutServerIsUnavailable) {
  RemoteEmbedder e("http://127.0.0.1:1/embed", 8, std::chrono::milliseconds(300));
  EXPECT_EQ(kind_of([&] { e.embed("x"); }), ErrorKind::retrieval_unavailable);
}

// ---- corpus ----

TEST(Corpus, BundledCorpusLoads) {
  const auto docs = load_corpus_jsonl(testing::data_dir() / "corpus.jsonl");
  EXPECT_EQ(docs.size(), 50u);
  std::set<std::string> ids;
  for (const auto& d : docs) ids.insert(d.id);
  EXPECT_EQ(ids.size(), docs.size());
  EXPECT_TRUE(ids.count("math-pythagorean"));
}

TEST(Corpus, LoadErrorsNameTheLine) {
  testing::TempDir dir;
  testing::write_file(dir / "dup.jsonl",
                      "{\"id\":\"a\",\"title\":\"t\",\"text\":\"x\"}\n{\"id\":\"a\",\"title\":\"t\",\"text\":\"y\"}\n");
  try {
    load_corpus_jsonl(dir / "dup.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos);
  }
  testing::write_file(dir / "bad.jsonl", "{oops\n");
  EXPECT_EQ(kind_of([&] { load_corpus_jsonl(dir / "bad.jsonl"); }), ErrorKind::format);
  testing::write_file(dir / "blank.jsonl", "{\"id\":\"a\",\"title\":\"t\",\"text\":\" \"}\n");
  EXPECT_EQ(kind_of([&] { load_corpus_jsonl(dir / "blank.jsonl"); }), ErrorKind::validation);
  EXPECT_EQ(kind_of([&] { load_corpus_jsonl(dir / "missing.jsonl"); }), ErrorKind::io);
}

TEST(Corpus, SaveLoadRoundTrip) {
  testing::TempDir dir;
  const std::vector<Document> docs{{"a", "标题", "正文\n第二行"}, {"b", "", "text"}};
  save_corpus_jsonl(docs, dir / "c.jsonl");
  const auto back = load_corpus_jsonl(dir / "c.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].text, "正文\n第二行");
  EXPECT_EQ(back[0].title, "标题");
}

// ---- rerank ----

TEST(Rerank, OverlapF1ReferenceValues) {
  EXPECT_NEAR(overlap_f1("勾股定理 证明", "勾股定理 勾股定理的证明方法很多"), 8.0 / 17.0, 1e-12);
  EXPECT_DOUBLE_EQ(overlap_f1("勾股定理 证明", "光的折射 插入水中的筷子"), 0.0);
  EXPECT_NEAR(overlap_f1("abcd", "xbcdy"), 0.5714285714285714, 1e-12);
}

TEST(Rerank, PromotesRelevantPassage) {
  const std::vector<RerankCandidate> cands{
      candidate("refraction", "光的折射 插入水中的筷子", 0.9),
      candidate("pythagoras", "勾股定理 勾股定理的证明方法很多", 0.4)};
  OverlapReranker scorer;
  const auto r = rerank("勾股定理 证明", cands, 1, scorer);
  ASSERT_EQ(r.docs.size(), 1u);
  EXPECT_EQ(r.docs[0].doc.id, "pythagoras");
  EXPECT_DOUBLE_EQ(r.docs[0].similarity, 0.4);
  EXPECT_FALSE(r.degraded);
}

TEST(Rerank, EqualScoresOrderById) {
  const std::vector<RerankCandidate> cands{candidate("z", "same text", 0.9),
                                           candidate("a", "same text", 0.1),
                                           candidate("m", "same text", 0.5)};
  const auto r = rerank("same", cands, 3, OverlapReranker());
  ASSERT_EQ(r.docs.size(), 3u);
  EXPECT_EQ(r.docs[0].doc.id, "a");
  EXPECT_EQ(r.docs[1].doc.id, "m");
  EXPECT_EQ(r.docs[2].doc.id, "z");
}

TEST(Rerank, MLargerThanCandidatesAndEmptyInput) {
  const std::vector<RerankCandidate> cands{candidate("a", "x", 0.1), candidate("b", "y", 0.2)};
  EXPECT_EQ(rerank("q", cands, 10, OverlapReranker()).docs.size(), 2u);
  EXPECT_TRUE(rerank("q", {}, 3, OverlapReranker()).docs.empty());
  EXPECT_TRUE(rerank("q", cands, 0, OverlapReranker()).docs.empty());
}

TEST(Rerank, ScorerFailureFallsBackToSimilarityOrder) {
  const std::vector<RerankCandidate> cands{candidate("a", "x", 0.1), candidate("b", "y", 0.7),
                                           candidate("c", "z", 0.5)};
  const auto r = rerank("q", cands, 2, FailingReranker());
  EXPECT_TRUE(r.degraded);
  EXPECT_FALSE(r.note.empty());
  ASSERT_EQ(r.docs.size(), 2u);
  EXPECT_EQ(r.docs[0].doc.id, "b");
  EXPECT_EQ(r.docs[1].doc.id, "c");
}

TEST(Rerank, RemoteWithoutServerDegrades) {
  RemoteReranker remote("http://127.0.0.1:1/rerank", std::chrono::milliseconds(300));
  const auto r = rerank("q", {candidate("a", "x", 0.3)}, 1, remote);
  EXPECT_TRUE(r.degraded);
  EXPECT_EQ(r.docs.size(), 1u);
}

// ---- retriever ----

TEST(Retriever, NotReadyIsUnavailable) {
  Retriever r(std::make_shared<HashingEmbedder>(64), std::make_shared<OverlapReranker>(), {});
  EXPECT_FALSE(r.ready());
  EXPECT_EQ(kind_of([&] { r.search("q", 3); }), ErrorKind::retrieval_unavailable);
  EXPECT_EQ(kind_of([&] { r.retrieve("q", 3, 1); }), ErrorKind::retrieval_unavailable);
}

TEST(Retriever, CascadeShapeOnBundledCorpus) {
  const auto r = corpus_retriever();
  EXPECT_EQ(r->size(), 50u);
  const auto res = r->retrieve("勾股定理怎么证明？", 100, 3);
  EXPECT_EQ(res.hits.size(), 50u);  // k exceeds the corpus
  ASSERT_EQ(res.contexts.size(), 3u);
  std::set<std::string> hit_ids;
  for (const auto& h : res.hits) hit_ids.insert(h.doc_id);
  for (const auto& c : res.contexts) EXPECT_TRUE(hit_ids.count(c.doc.id)) << c.doc.id;
  EXPECT_EQ(res.contexts[0].doc.id, "math-pythagorean");
  for (std::size_t i = 1; i < res.contexts.size(); ++i) {
    EXPECT_GE(res.contexts[i - 1].score, res.contexts[i].score);
  }
}

TEST(Retriever, SmallKLimitsCandidates) {
  const auto r = corpus_retriever();
  const auto res = r->retrieve("勾股定理", 5, 3);
  EXPECT_EQ(res.hits.size(), 5u);
  EXPECT_LE(res.contexts.size(), 3u);
}

TEST(Retriever, EmbedderFailureIsRetrievalUnavailable) {
  Retriever r(std::make_shared<FailingEmbedder>(), std::make_shared<OverlapReranker>(), {});
  HnswIndexf index(64);
  r.install({}, index);
  EXPECT_EQ(kind_of([&] { r.search("q", 3); }), ErrorKind::retrieval_unavailable);
}

TEST(Retriever, InstallValidatesIndexAgainstCorpus) {
  Retriever r(std::make_shared<HashingEmbedder>(64), std::make_shared<OverlapReranker>(), {});
  EXPECT_EQ(kind_of([&] { r.install({}, HnswIndexf(32)); }), ErrorKind::validation);
  HnswIndexf index(64);
  index.insert("ghost", HashingEmbedder(64).embed("x"));
  EXPECT_EQ(kind_of([&] { r.install({{"ghost2", "", "y"}}, index); }), ErrorKind::validation);
  // A snapshot that misses corpus documents is stale.
  EXPECT_EQ(kind_of([&] { r.install({{"ghost", "", "x"}, {"new", "", "y"}}, index); }),
            ErrorKind::validation);
  EXPECT_FALSE(r.ready());
  r.install({{"ghost", "", "x"}}, index);
  EXPECT_TRUE(r.ready());
}

TEST(Retriever, SnapshotSaveLoadGivesSameResults) {
  testing::TempDir dir;
  const auto r = corpus_retriever();
  const auto path = dir / "nested" / "corpus.hnsw";
  r->save(path);
  Retriever other(std::make_shared<HashingEmbedder>(64), std::make_shared<OverlapReranker>(), {});
  other.install(load_corpus_jsonl(testing::data_dir() / "corpus.jsonl"), load_index(path));
  EXPECT_EQ(other.search("光的折射", 10), r->search("光的折射", 10));
  EXPECT_EQ(kind_of([&] { load_index(dir / "none.hnsw"); }), ErrorKind::not_found);
}

TEST(Retriever, ReindexWhileSearching) {
  const auto r = corpus_retriever();
  const auto docs = load_corpus_jsonl(testing::data_dir() / "corpus.jsonl");
  std::atomic<bool> stop{false};
  std::atomic<int> bad{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      while (!stop) {
        const auto res = r->retrieve("化学反应", 100, 3);
        if (res.hits.size() != 50 || res.contexts.size() != 3) ++bad;
      }
    });
  }
  for (int i = 0; i < 3; ++i) r->reindex(docs);
  stop = true;
  for (auto& th : readers) th.join();
  EXPECT_EQ(bad.load(), 0);
  EXPECT_GT(r->reads(), 0u);
}

}  // namespace
}  // namespace edupsy::retrieval
