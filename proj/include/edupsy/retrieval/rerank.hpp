// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "edupsy/retrieval/document.hpp"

namespace edupsy::retrieval {

struct RerankCandidate {
  ScoredHit hit;
  Document doc;
};

struct RerankedDoc {
  Document doc;
  double score = 0.0;       // reranker score
  double similarity = 0.0;  // first-stage cosine
};

struct RerankResult {
  std::vector<RerankedDoc> docs;
  bool degraded = false;  // scorer failed, similarity order used
  std::string note;
};

/// Second-stage relevance scorer. Returns one score per passage, higher is
/// more relevant.
class Reranker {
 public:
  virtual ~Reranker() = default;
  virtual std::vector<double> score(std::string_view question,
                                    const std::vector<const Document*>& passages) const = 0;
};

/// Character-bigram multiset F1 between the normalized question and
/// normalized title + text. Bigrams spanning whitespace are skipped; text
/// with no bigram falls back to its characters.
double overlap_f1(std::string_view question, std::string_view passage);

class OverlapReranker final : public Reranker {
 public:
  std::vector<double> score(std::string_view question,
                            const std::vector<const Document*>& passages) const override;
};

/// POST {"query": "...", "passages": [...]} -> {"scores": [...]}.
/// Failures throw Error(unavailable).
class RemoteReranker final : public Reranker {
 public:
  RemoteReranker(std::string url, std::chrono::milliseconds timeout);
  std::vector<double> score(std::string_view question,
                            const std::vector<const Document*>& passages) const override;

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

/// Top min(m, |candidates|) by (score desc, doc_id asc). If the scorer
/// throws, falls back to first-stage order and sets `degraded`.
RerankResult rerank(std::string_view question, const std::vector<RerankCandidate>& candidates,
                    std::size_t m, const Reranker& scorer);

std::string passage_text(const Document& doc);

}  // namespace edupsy::retrieval
