// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "edupsy/retrieval/embedder.hpp"
#include "edupsy/retrieval/hnsw.hpp"
#include "edupsy/retrieval/rerank.hpp"

namespace edupsy::retrieval {

struct RetrievalResult {
  std::vector<ScoredHit> hits;         // first stage, at most k
  std::vector<RerankedDoc> contexts;   // second stage, subset of hits
  bool degraded = false;
  std::string note;
};

void save_index(const HnswIndexf& index, const std::filesystem::path& path);
HnswIndexf load_index(const std::filesystem::path& path);

/// Embed -> HNSW search -> rerank over one corpus. Searches take a shared
/// lock; reindex builds off to the side and swaps under an exclusive lock.
class Retriever {
 public:
  Retriever(std::shared_ptr<const Embedder> embedder, std::shared_ptr<const Reranker> reranker,
            HnswParams params);

  /// Builds a fresh index over `docs` and swaps it in.
  void reindex(const std::vector<Document>& docs);
  /// Installs a prebuilt index. Every indexed id must be in `docs`.
  void install(const std::vector<Document>& docs, HnswIndexf index);

  bool ready() const;
  std::size_t size() const;
  std::optional<Document> find(const std::string& id) const;

  /// Throws Error(retrieval_unavailable) when no index is loaded or the
  /// embedder fails.
  std::vector<ScoredHit> search(std::string_view query, std::size_t k) const;
  RetrievalResult retrieve(std::string_view query, std::size_t k, std::size_t m) const;

  void save(const std::filesystem::path& path) const;

  /// Number of index searches served.
  std::uint64_t reads() const { return reads_.load(); }

 private:
  struct State {
    std::unordered_map<std::string, Document> docs;
    HnswIndexf index;
  };

  std::shared_ptr<const State> snapshot() const;
  std::vector<ScoredHit> search_in(const std::shared_ptr<const State>& state,
                                   std::string_view query, std::size_t k) const;

  std::shared_ptr<const Embedder> embedder_;
  std::shared_ptr<const Reranker> reranker_;
  HnswParams params_;
  mutable std::shared_mutex mu_;
  std::shared_ptr<const State> state_;
  mutable std::atomic<std::uint64_t> reads_{0};
};

}  // namespace edupsy::retrieval
