// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "edupsy/core/errors.hpp"
#include "edupsy/retrieval/document.hpp"

namespace edupsy::retrieval {

/// Exact top-k by cosine with the same ordering as HnswIndex::search.
template <typename Scalar>
std::vector<ScoredHit> brute_force_knn(std::span<const EmbeddedDocument<Scalar>> docs,
                                       const Vector<Scalar>& query, std::size_t k) {
  std::vector<ScoredHit> hits;
  if (k == 0) return hits;
  hits.reserve(docs.size());
  for (const auto& d : docs) {
    if (d.vector.size() != query.size()) {
      throw Error(ErrorKind::validation, "vector dimension mismatch for '" + d.doc.id + "'");
    }
    hits.push_back({d.doc.id, static_cast<double>(similarity<Scalar>(d.vector, query))});
  }
  const std::size_t keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    hit_before);
  hits.resize(keep);
  return hits;
}

template <typename Scalar>
std::vector<ScoredHit> brute_force_knn(const std::vector<EmbeddedDocument<Scalar>>& docs,
                                       const Vector<Scalar>& query, std::size_t k) {
  return brute_force_knn<Scalar>(std::span<const EmbeddedDocument<Scalar>>(docs), query, k);
}

}  // namespace edupsy::retrieval
