// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "edupsy/retrieval/document.hpp"

namespace edupsy::retrieval {

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::size_t dim() const = 0;
  /// Unit-norm embedding. Throws validation on blank text.
  virtual Vector<float> embed(std::string_view text) const = 0;
  virtual std::vector<Vector<float>> embed_batch(const std::vector<std::string>& texts) const;
};

/// Hashed character n-grams folded into a dense `dim` vector, L2-normalized.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dim = 64);
  std::size_t dim() const override { return dim_; }
  Vector<float> embed(std::string_view text) const override;

 private:
  std::size_t dim_;
};

/// POST {"texts": [...]} -> {"vectors": [[...]]}. Any failure (transport,
/// shape, dim) throws Error(retrieval_unavailable).
class RemoteEmbedder final : public Embedder {
 public:
  RemoteEmbedder(std::string url, std::size_t dim, std::chrono::milliseconds timeout);
  std::size_t dim() const override { return dim_; }
  Vector<float> embed(std::string_view text) const override;
  std::vector<Vector<float>> embed_batch(const std::vector<std::string>& texts) const override;

 private:
  std::string url_;
  std::size_t dim_;
  std::chrono::milliseconds timeout_;
};

std::vector<EmbeddedDocumentf> embed_documents(const Embedder& embedder,
                                               const std::vector<Document>& docs);

/// Text an entry is embedded from: title and body.
std::string embedding_text(const Document& doc);

}  // namespace edupsy::retrieval
