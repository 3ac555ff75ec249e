// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/core/errors.hpp"

namespace edupsy {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::config: return "config";
    case ErrorKind::domain: return "domain";
    case ErrorKind::training: return "training";
    case ErrorKind::unavailable: return "unavailable";
    case ErrorKind::backend_unavailable: return "backend_unavailable";
    case ErrorKind::retrieval_unavailable: return "retrieval_unavailable";
    case ErrorKind::timeout: return "timeout";
    case ErrorKind::io: return "io";
    case ErrorKind::format: return "format";
  }
  return "unknown";
}

}  // namespace edupsy
