// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edupsy {

enum class ErrorKind {
  validation,
  not_found,
  config,
  domain,
  training,
  unavailable,
  backend_unavailable,
  retrieval_unavailable,
  timeout,
  io,
  format,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure surfaced by the library carries a kind so callers (and the
/// HTTP layer) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace edupsy
