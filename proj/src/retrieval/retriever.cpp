// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/retrieval/retriever.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <utility>

#include "edupsy/core/errors.hpp"

namespace edupsy::retrieval {

void save_index(const HnswIndexf& index, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + tmp);
    index.save(out);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::io, "cannot replace " + path.string() + ": " + ec.message());
}

HnswIndexf load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::not_found, "index file not found: " + path.string());
  return HnswIndexf::load(in);
}

Retriever::Retriever(std::shared_ptr<const Embedder> embedder,
                     std::shared_ptr<const Reranker> reranker, HnswParams params)
    : embedder_(std::move(embedder)), reranker_(std::move(reranker)), params_(params) {
  if (!embedder_) throw Error(ErrorKind::config, "retriever needs an embedder");
  if (!reranker_) throw Error(ErrorKind::config, "retriever needs a reranker");
}

void Retriever::reindex(const std::vector<Document>& docs) {
  const auto embedded = embed_documents(*embedder_, docs);
  install(docs, HnswIndexf::build(embedder_->dim(), embedded, params_));
}

void Retriever::install(const std::vector<Document>& docs, HnswIndexf index) {
  if (index.dim() != embedder_->dim()) {
    throw Error(ErrorKind::validation, "index dim " + std::to_string(index.dim()) +
                                           " does not match embedder dim " +
                                           std::to_string(embedder_->dim()));
  }
  auto state = std::make_shared<State>(State{{}, std::move(index)});
  for (const auto& d : docs) {
    if (!state->docs.emplace(d.id, d).second) {
      throw Error(ErrorKind::validation, "duplicate document id '" + d.id + "'");
    }
  }
  if (state->index.size() != state->docs.size()) {
    throw Error(ErrorKind::validation, "index holds " + std::to_string(state->index.size()) +
                                           " documents, corpus has " + std::to_string(state->docs.size()));
  }
  for (std::uint32_t n = 0; n < state->index.size(); ++n) {
    if (state->docs.count(state->index.doc_id(n)) == 0) {
      throw Error(ErrorKind::validation,
                  "indexed id '" + state->index.doc_id(n) + "' is not in the corpus");
    }
  }
  std::unique_lock lock(mu_);
  state_ = std::move(state);
}

bool Retriever::ready() const {
  std::shared_lock lock(mu_);
  return state_ != nullptr;
}

std::size_t Retriever::size() const {
  std::shared_lock lock(mu_);
  return state_ ? state_->index.size() : 0;
}

std::optional<Document> Retriever::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  if (!state_) return std::nullopt;
  const auto it = state_->docs.find(id);
  if (it == state_->docs.end()) return std::nullopt;
  return it->second;
}

std::shared_ptr<const Retriever::State> Retriever::snapshot() const {
  std::shared_lock lock(mu_);
  return state_;
}

std::vector<ScoredHit> Retriever::search(std::string_view query, std::size_t k) const {
  return search_in(snapshot(), query, k);
}

std::vector<ScoredHit> Retriever::search_in(const std::shared_ptr<const State>& state,
                                            std::string_view query, std::size_t k) const {
  if (!state) throw Error(ErrorKind::retrieval_unavailable, "no index loaded");
  Vector<float> q;
  try {
    q = embedder_->embed(query);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation) throw;
    throw Error(ErrorKind::retrieval_unavailable, e.what());
  }
  ++reads_;
  return state->index.search(q, k, std::max(params_.ef_search, k));
}

RetrievalResult Retriever::retrieve(std::string_view query, std::size_t k, std::size_t m) const {
  const auto state = snapshot();
  RetrievalResult result;
  result.hits = search_in(state, query, k);
  std::vector<RerankCandidate> candidates;
  candidates.reserve(result.hits.size());
  for (const auto& h : result.hits) candidates.push_back({h, state->docs.at(h.doc_id)});
  auto reranked = rerank(query, candidates, m, *reranker_);
  result.contexts = std::move(reranked.docs);
  result.degraded = reranked.degraded;
  result.note = std::move(reranked.note);
  return result;
}

void Retriever::save(const std::filesystem::path& path) const {
  const auto state = snapshot();
  if (!state) throw Error(ErrorKind::retrieval_unavailable, "no index loaded");
  save_index(state->index, path);
}

}  // namespace edupsy::retrieval
