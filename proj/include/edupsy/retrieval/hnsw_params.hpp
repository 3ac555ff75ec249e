// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace edupsy::retrieval {

struct HnswParams {
  std::size_t m = 16;                 // max neighbors per node on layers > 0; layer 0 allows 2m
  std::size_t ef_construction = 200;
  std::size_t ef_search = 128;
  double level_lambda = 0.0;          // 0 selects 1 / ln(m)
  std::uint64_t seed = 42;
  bool heuristic_pruning = false;

  double effective_level_lambda() const {
    return level_lambda > 0.0 ? level_lambda : 1.0 / std::log(static_cast<double>(m));
  }
  std::size_t max_degree(int layer) const { return layer == 0 ? 2 * m : m; }
};

}  // namespace edupsy::retrieval
