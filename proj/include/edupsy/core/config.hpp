// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "edupsy/retrieval/hnsw_params.hpp"

namespace edupsy {

/// Service configuration. Loaded from a TOML-style key/value file; see
/// `config/edupsy.toml` for every key with its default.
struct ServiceConfig {
  double safety_threshold = 0.5;
  double intent_threshold = 0.5;
  std::size_t retrieve_k = 100;
  std::size_t rerank_m = 3;
  std::size_t history_window = 10;
  std::size_t excerpt_budget = 800;
  std::size_t prompt_budget = 6000;
  std::int64_t request_timeout_ms = 30000;
  std::string refusal_message =
      "抱歉，这个问题我无法回答。Sorry, I can't help with that request.";
  bool allow_degraded = true;

  retrieval::HnswParams hnsw;
  std::size_t embed_dim = 64;

  // Remote endpoints; empty selects the built-in local implementation.
  std::string embedding_endpoint;
  std::string reranker_endpoint;
  std::string generation_endpoint;
  std::string safety_endpoint;
  std::string intent_endpoint;
  std::string backend = "mock";  // mock | remote

  std::filesystem::path safety_model;
  std::filesystem::path intent_model;
  std::filesystem::path corpus;
  std::filesystem::path index;
  std::filesystem::path templates;
  std::filesystem::path session_log;
  std::filesystem::path trace_log;

  std::string host = "127.0.0.1";
  int port = 8080;

  /// Throws Error(config) naming the first offending key.
  void validate() const;
};

/// Parses config text. Relative paths resolve against `base_dir`.
ServiceConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ServiceConfig load_config(const std::filesystem::path& path);

/// Environment override for a key: EDUPSY_ + upper-cased key with '.' -> '_',
/// e.g. hnsw.ef_search -> EDUPSY_HNSW_EF_SEARCH.
std::string env_var_for_key(std::string_view key);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Applies environment overrides for every known key, then re-validates.
void apply_env_overrides(ServiceConfig& config, const EnvLookup& lookup);
void apply_env_overrides(ServiceConfig& config);

/// All recognised keys, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace edupsy
