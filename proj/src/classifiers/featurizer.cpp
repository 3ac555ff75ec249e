// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/classifiers/featurizer.hpp"

#include <algorithm>
#include <string>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::classifiers {

std::vector<HashedCount> hashed_ngram_counts(std::string_view text, std::size_t dim) {
  if (dim < 2) throw Error(ErrorKind::validation, "featurizer dim must be at least 2");
  const std::u32string cps = text::normalize(text);
  if (cps.empty()) throw Error(ErrorKind::validation, "cannot featurize empty text");

  std::vector<std::uint32_t> hits;
  const auto add = [&](std::size_t start, std::size_t len) {
    const std::string gram = text::encode_utf8(std::u32string_view(cps).substr(start, len));
    hits.push_back(static_cast<std::uint32_t>(text::fnv1a64(gram) % dim));
  };
  if (cps.size() == 1) {
    add(0, 1);
  } else {
    for (std::size_t n = kMinNgram; n <= static_cast<std::size_t>(kMaxNgram); ++n) {
      for (std::size_t i = 0; i + n <= cps.size(); ++i) add(i, n);
    }
  }

  std::sort(hits.begin(), hits.end());
  std::vector<HashedCount> out;
  for (auto h : hits) {
    if (!out.empty() && out.back().index == h) {
      ++out.back().count;
    } else {
      out.push_back({h, 1});
    }
  }
  return out;
}

}  // namespace edupsy::classifiers
