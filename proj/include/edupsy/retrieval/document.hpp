// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace edupsy::retrieval {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

struct Document {
  std::string id;
  std::string title;
  std::string text;
};

template <typename Scalar>
struct EmbeddedDocument {
  Document doc;
  Vector<Scalar> vector;  // unit L2 norm
};

using EmbeddedDocumentf = EmbeddedDocument<float>;

struct ScoredHit {
  std::string doc_id;
  double similarity = 0.0;  // cosine

  friend bool operator==(const ScoredHit&, const ScoredHit&) = default;
};

/// Hit order used everywhere: similarity descending, then doc_id ascending.
inline bool hit_before(const ScoredHit& a, const ScoredHit& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.doc_id < b.doc_id;
}

/// Cosine similarity of unit vectors. Every search path goes through this one
/// function so approximate and exact results compare bit-for-bit.
template <typename Scalar>
Scalar similarity(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  return a.dot(b);
}

/// Corpus JSONL: {"id": "...", "title": "...", "text": "..."} per line.
/// Throws format for malformed lines, validation for duplicate ids or empty text.
std::vector<Document> load_corpus_jsonl(const std::filesystem::path& path);
void save_corpus_jsonl(const std::vector<Document>& docs, const std::filesystem::path& path);

}  // namespace edupsy::retrieval
