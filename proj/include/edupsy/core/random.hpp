// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace edupsy {

// std::mt19937_64 output is fully specified by the standard; the helpers below
// avoid the implementation-defined <random> distributions so seeded runs are
// reproducible across standard libraries.

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

/// Uniform in (0, 1].
inline double uniform_open0(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via Box-Muller.
inline double standard_normal(std::mt19937_64& rng) {
  const double u1 = uniform_open0(rng);
  const double u2 = uniform_open0(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

template <typename T>
void shuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[pick(rng, i)]);
  }
}

}  // namespace edupsy
