// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "edupsy/agents/agents.hpp"
#include "edupsy/agents/backend.hpp"
#include "edupsy/classifiers/scorer.hpp"
#include "edupsy/core/config.hpp"
#include "edupsy/core/session_store.hpp"
#include "edupsy/orchestrator/pipeline.hpp"
#include "edupsy/retrieval/retriever.hpp"

namespace edupsy::orchestrator {

/// Replacements for components normally built from config. Tests use these to
/// inject clocks, seeded ids and failing or counting doubles.
struct ServiceOverrides {
  std::function<TimestampMs()> clock;
  std::optional<std::uint64_t> session_seed;
  std::shared_ptr<agents::GenerationBackend> backend;
  std::shared_ptr<const classifiers::ProbabilityScorer> safety_scorer;
  std::shared_ptr<const classifiers::ProbabilityScorer> intent_scorer;
};

struct ComponentStatus {
  std::string name;
  bool ready = false;
  std::string detail;
};

/// Everything a running server needs, wired from a ServiceConfig.
class Service {
 public:
  /// Missing models or corpus are tolerated when allow_degraded is set and
  /// reported through health(); otherwise boot throws.
  explicit Service(ServiceConfig config, ServiceOverrides overrides = {});

  ChatResult chat(const std::optional<std::string>& session_id, std::string_view message);
  Session session(const std::string& id) const;

  std::vector<ComponentStatus> components() const;
  bool ready() const;
  nlohmann::ordered_json health() const;

  /// Reloads the corpus, rebuilds the index and writes the snapshot.
  /// Returns the number of indexed documents.
  std::size_t reindex();

  std::uint64_t backend_calls() const { return backend_->calls(); }
  std::uint64_t retrieval_reads() const { return retriever_->reads(); }
  std::uint64_t citation_violations() const { return education_->citation_violations(); }

  const ServiceConfig& config() const { return config_; }
  Pipeline& pipeline() { return *pipeline_; }
  const retrieval::Retriever& retriever() const { return *retriever_; }

 private:
  void boot_retrieval();

  ServiceConfig config_;
  std::shared_ptr<SessionStore> sessions_;
  std::shared_ptr<const classifiers::SafetyGate> safety_;
  std::shared_ptr<const classifiers::IntentRouter> intent_;
  std::string safety_detail_;
  std::string intent_detail_;
  std::shared_ptr<retrieval::Retriever> retriever_;
  std::string retrieval_detail_;
  std::shared_ptr<agents::CountingBackend> backend_;
  std::shared_ptr<const agents::EducationAgent> education_;
  std::shared_ptr<const agents::PsychologyAgent> psychology_;
  std::unique_ptr<Pipeline> pipeline_;
  mutable std::mutex admin_mutex_;
};

}  // namespace edupsy::orchestrator
