// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/retrieval/embedder.hpp"

#include <cmath>

#include "edupsy/classifiers/featurizer.hpp"
#include "edupsy/core/errors.hpp"
#include "edupsy/core/http_json.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::retrieval {

std::vector<Vector<float>> Embedder::embed_batch(const std::vector<std::string>& texts) const {
  std::vector<Vector<float>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed(t));
  return out;
}

HashingEmbedder::HashingEmbedder(std::size_t dim) : dim_(dim) {
  if (dim < 2) throw Error(ErrorKind::validation, "embedding dim must be at least 2");
}

Vector<float> HashingEmbedder::embed(std::string_view text) const {
  // featurize() is already unit-norm; densify and renormalize in float.
  const auto sparse = classifiers::featurize<double>(text, dim_);
  Vector<double> dense = Vector<double>(sparse);
  Vector<float> v = dense.cast<float>();
  v /= v.norm();
  return v;
}

RemoteEmbedder::RemoteEmbedder(std::string url, std::size_t dim, std::chrono::milliseconds timeout)
    : url_(std::move(url)), dim_(dim), timeout_(timeout) {
  parse_endpoint(url_);
}

Vector<float> RemoteEmbedder::embed(std::string_view text) const {
  return embed_batch({std::string(text)}).front();
}

std::vector<Vector<float>> RemoteEmbedder::embed_batch(const std::vector<std::string>& texts) const {
  for (const auto& t : texts) {
    if (text::is_blank(t)) throw Error(ErrorKind::validation, "cannot embed empty text");
  }
  nlohmann::json reply;
  try {
    reply = post_json(url_, {{"texts", texts}}, timeout_);
  } catch (const Error& e) {
    throw Error(ErrorKind::retrieval_unavailable, e.what());
  }
  const auto fail = [&](const std::string& why) {
    return Error(ErrorKind::retrieval_unavailable, "embedding endpoint " + url_ + ": " + why);
  };
  if (!reply.is_object() || !reply.contains("vectors") || !reply["vectors"].is_array()) {
    throw fail("reply has no vectors array");
  }
  const auto& arr = reply["vectors"];
  if (arr.size() != texts.size()) throw fail("vector count does not match input count");
  std::vector<Vector<float>> out;
  out.reserve(arr.size());
  for (const auto& row : arr) {
    if (!row.is_array() || row.size() != dim_) throw fail("vector has the wrong dimension");
    Vector<float> v(static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!row[i].is_number()) throw fail("non-numeric vector entry");
      v[static_cast<Eigen::Index>(i)] = row[i].get<float>();
    }
    const float n = v.norm();
    if (!(n > 0.0f) || !std::isfinite(n)) throw fail("zero or non-finite vector");
    out.push_back(v / n);
  }
  return out;
}

std::string embedding_text(const Document& doc) {
  return doc.title.empty() ? doc.text : doc.title + " " + doc.text;
}

std::vector<EmbeddedDocumentf> embed_documents(const Embedder& embedder,
                                               const std::vector<Document>& docs) {
  std::vector<std::string> texts;
  texts.reserve(docs.size());
  for (const auto& d : docs) texts.push_back(embedding_text(d));
  auto vectors = embedder.embed_batch(texts);
  std::vector<EmbeddedDocumentf> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) out.push_back({docs[i], std::move(vectors[i])});
  return out;
}

}  // namespace edupsy::retrieval
