// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace edupsy::classifiers {

/// Character n-gram orders hashed by the featurizer.
inline constexpr int kMinNgram = 2;
inline constexpr int kMaxNgram = 3;

struct HashedCount {
  std::uint32_t index;
  std::uint32_t count;
};

/// Hashes the character 2- and 3-grams of the normalized text (trimmed,
/// whitespace collapsed, ASCII lowercased) into [0, dim) with FNV-1a over the
/// n-gram's UTF-8 bytes. A single-character text contributes its unigram.
/// Result is sorted by index with colliding n-grams merged.
/// Throws validation for dim < 2 or blank text.
std::vector<HashedCount> hashed_ngram_counts(std::string_view text, std::size_t dim);

template <typename Scalar = double>
using FeatureVectorT = Eigen::SparseVector<Scalar>;
using FeatureVector = FeatureVectorT<double>;

/// L2-normalized hashed n-gram counts.
template <typename Scalar = double>
FeatureVectorT<Scalar> featurize(std::string_view text, std::size_t dim) {
  const auto counts = hashed_ngram_counts(text, dim);
  Scalar norm2 = 0;
  for (const auto& c : counts) norm2 += static_cast<Scalar>(c.count) * static_cast<Scalar>(c.count);
  const Scalar inv = Scalar(1) / std::sqrt(norm2);
  FeatureVectorT<Scalar> v(static_cast<Eigen::Index>(dim));
  v.reserve(static_cast<Eigen::Index>(counts.size()));
  for (const auto& c : counts) {
    v.insertBack(static_cast<Eigen::Index>(c.index)) = static_cast<Scalar>(c.count) * inv;
  }
  return v;
}

}  // namespace edupsy::classifiers
