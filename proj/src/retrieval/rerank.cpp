// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/retrieval/rerank.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/http_json.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::retrieval {
namespace {

using Gram = std::pair<char32_t, char32_t>;

std::map<Gram, std::size_t> bigram_bag(std::string_view s) {
  const std::u32string t = text::normalize(s);
  std::map<Gram, std::size_t> bag;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] == U' ' || t[i + 1] == U' ') continue;
    ++bag[{t[i], t[i + 1]}];
  }
  if (bag.empty()) {
    for (char32_t c : t) {
      if (c != U' ') ++bag[{c, U'\0'}];
    }
  }
  return bag;
}

std::size_t total(const std::map<Gram, std::size_t>& bag) {
  std::size_t n = 0;
  for (const auto& [g, c] : bag) n += c;
  return n;
}

}  // namespace

double overlap_f1(std::string_view question, std::string_view passage) {
  const auto q = bigram_bag(question);
  const auto p = bigram_bag(passage);
  const std::size_t nq = total(q);
  const std::size_t np = total(p);
  if (nq == 0 || np == 0) return 0.0;
  std::size_t common = 0;
  for (const auto& [g, c] : q) {
    const auto it = p.find(g);
    if (it != p.end()) common += std::min(c, it->second);
  }
  return 2.0 * static_cast<double>(common) / static_cast<double>(nq + np);
}

std::string passage_text(const Document& doc) {
  return doc.title.empty() ? doc.text : doc.title + " " + doc.text;
}

std::vector<double> OverlapReranker::score(std::string_view question,
                                           const std::vector<const Document*>& passages) const {
  std::vector<double> out;
  out.reserve(passages.size());
  for (const Document* d : passages) out.push_back(overlap_f1(question, passage_text(*d)));
  return out;
}

RemoteReranker::RemoteReranker(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {
  parse_endpoint(url_);
}

std::vector<double> RemoteReranker::score(std::string_view question,
                                          const std::vector<const Document*>& passages) const {
  nlohmann::json texts = nlohmann::json::array();
  for (const Document* d : passages) texts.push_back(passage_text(*d));
  const auto reply =
      post_json(url_, {{"query", std::string(question)}, {"passages", texts}}, timeout_);
  if (!reply.is_object() || !reply.contains("scores") || !reply["scores"].is_array() ||
      reply["scores"].size() != passages.size()) {
    throw Error(ErrorKind::unavailable, "reranker " + url_ + ": malformed scores");
  }
  std::vector<double> out;
  for (const auto& s : reply["scores"]) {
    if (!s.is_number() || !std::isfinite(s.get<double>())) {
      throw Error(ErrorKind::unavailable, "reranker " + url_ + ": non-numeric score");
    }
    out.push_back(s.get<double>());
  }
  return out;
}

RerankResult rerank(std::string_view question, const std::vector<RerankCandidate>& candidates,
                    std::size_t m, const Reranker& scorer) {
  RerankResult result;
  std::vector<const Document*> passages;
  passages.reserve(candidates.size());
  for (const auto& c : candidates) passages.push_back(&c.doc);

  std::vector<RerankedDoc> ranked;
  ranked.reserve(candidates.size());
  try {
    const auto scores = passages.empty() ? std::vector<double>{} : scorer.score(question, passages);
    if (scores.size() != candidates.size()) {
      throw Error(ErrorKind::unavailable, "reranker returned the wrong number of scores");
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      ranked.push_back({candidates[i].doc, scores[i], candidates[i].hit.similarity});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RerankedDoc& a, const RerankedDoc& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.doc.id < b.doc.id;
    });
  } catch (const Error& e) {
    ranked.clear();
    for (const auto& c : candidates) ranked.push_back({c.doc, c.hit.similarity, c.hit.similarity});
    std::sort(ranked.begin(), ranked.end(), [](const RerankedDoc& a, const RerankedDoc& b) {
      return hit_before({a.doc.id, a.similarity}, {b.doc.id, b.similarity});
    });
    result.degraded = true;
    result.note = std::string("rerank fallback: ") + e.what();
  }
  if (ranked.size() > m) ranked.resize(m);
  result.docs = std::move(ranked);
  return result;
}

}  // namespace edupsy::retrieval
