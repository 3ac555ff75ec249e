// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/orchestrator/service.hpp"

#include <filesystem>

#include "edupsy/classifiers/model_io.hpp"
#include "edupsy/core/errors.hpp"

namespace edupsy::orchestrator {
namespace {

namespace fs = std::filesystem;
using classifiers::ProbabilityScorer;

struct ScorerChoice {
  std::shared_ptr<const ProbabilityScorer> scorer;
  std::string detail;
};

ScorerChoice make_scorer(const std::string& key, const std::string& endpoint, const fs::path& model,
                         std::chrono::milliseconds timeout, bool allow_degraded) {
  if (!endpoint.empty()) {
    auto s = std::make_shared<classifiers::RemoteScorer>(endpoint, timeout);
    return {s, s->describe()};
  }
  if (!model.empty() && fs::exists(model)) {
    auto s = std::make_shared<classifiers::LocalScorer>(classifiers::load_model(model));
    return {s, s->describe()};
  }
  const std::string why = model.empty() ? "no model configured" : "model file not found: " + model.string();
  if (!allow_degraded) throw Error(ErrorKind::config, "config key '" + key + "': " + why);
  return {nullptr, why};
}

}  // namespace

Service::Service(ServiceConfig config, ServiceOverrides overrides) : config_(std::move(config)) {
  config_.validate();
  const std::chrono::milliseconds timeout(config_.request_timeout_ms);

  SessionStoreOptions store_options;
  store_options.clock = overrides.clock;
  store_options.id_seed = overrides.session_seed;
  store_options.journal = config_.session_log;
  if (config_.session_log.has_parent_path()) {
    fs::create_directories(config_.session_log.parent_path());
  }
  sessions_ = std::make_shared<SessionStore>(store_options);
  if (!config_.session_log.empty() && fs::exists(config_.session_log) &&
      fs::file_size(config_.session_log) > 0) {
    sessions_->recover(config_.session_log);
  }

  ScorerChoice safety =
      overrides.safety_scorer
          ? ScorerChoice{overrides.safety_scorer, overrides.safety_scorer->describe()}
          : make_scorer("models.safety", config_.safety_endpoint, config_.safety_model, timeout,
                        config_.allow_degraded);
  ScorerChoice intent =
      overrides.intent_scorer
          ? ScorerChoice{overrides.intent_scorer, overrides.intent_scorer->describe()}
          : make_scorer("models.intent", config_.intent_endpoint, config_.intent_model, timeout,
                        config_.allow_degraded);
  safety_ = std::make_shared<classifiers::SafetyGate>(safety.scorer, config_.safety_threshold);
  intent_ = std::make_shared<classifiers::IntentRouter>(intent.scorer, config_.intent_threshold);
  safety_detail_ = safety.detail;
  intent_detail_ = intent.detail;

  std::shared_ptr<const retrieval::Embedder> embedder;
  if (!config_.embedding_endpoint.empty()) {
    embedder = std::make_shared<retrieval::RemoteEmbedder>(config_.embedding_endpoint,
                                                           config_.embed_dim, timeout);
  } else {
    embedder = std::make_shared<retrieval::HashingEmbedder>(config_.embed_dim);
  }
  std::shared_ptr<const retrieval::Reranker> reranker;
  if (!config_.reranker_endpoint.empty()) {
    reranker = std::make_shared<retrieval::RemoteReranker>(config_.reranker_endpoint, timeout);
  } else {
    reranker = std::make_shared<retrieval::OverlapReranker>();
  }
  retriever_ = std::make_shared<retrieval::Retriever>(embedder, reranker, config_.hnsw);
  boot_retrieval();

  std::shared_ptr<agents::GenerationBackend> inner = overrides.backend;
  if (!inner) {
    if (config_.backend == "remote") {
      inner = std::make_shared<agents::RemoteBackend>(config_.generation_endpoint, timeout);
    } else {
      inner = std::make_shared<agents::ScriptedMockBackend>();
    }
  }
  backend_ = std::make_shared<agents::CountingBackend>(inner);

  agents::PromptTemplates templates = agents::PromptTemplates::defaults();
  if (!config_.templates.empty()) {
    if (fs::exists(config_.templates)) {
      templates = agents::PromptTemplates::load(config_.templates);
    } else if (!config_.allow_degraded) {
      throw Error(ErrorKind::config,
                  "config key 'data.templates': file not found: " + config_.templates.string());
    }
  }
  agents::PromptBuilder builder(templates, {config_.excerpt_budget, config_.prompt_budget});
  education_ = std::make_shared<agents::EducationAgent>(
      retriever_, backend_, builder, agents::EducationOptions{config_.retrieve_k, config_.rerank_m});
  psychology_ = std::make_shared<agents::PsychologyAgent>(backend_, builder, config_.history_window);

  std::shared_ptr<TraceSink> sink;
  if (!config_.trace_log.empty()) sink = std::make_shared<TraceSink>(config_.trace_log);
  PipelineOptions options;
  options.refusal_message = config_.refusal_message;
  options.timeout = timeout;
  options.clock = overrides.clock;
  pipeline_ = std::make_unique<Pipeline>(sessions_, safety_, intent_, education_, psychology_,
                                         options, sink);
}

void Service::boot_retrieval() {
  const auto& corpus = config_.corpus;
  const auto& index = config_.index;
  try {
    if (corpus.empty() || !fs::exists(corpus)) {
      throw Error(ErrorKind::not_found, corpus.empty() ? "no corpus configured"
                                                       : "corpus not found: " + corpus.string());
    }
    const auto docs = retrieval::load_corpus_jsonl(corpus);
    if (!index.empty() && fs::exists(index)) {
      try {
        retriever_->install(docs, retrieval::load_index(index));
        retrieval_detail_ = "loaded " + index.string();
        return;
      } catch (const Error& e) {
        retrieval_detail_ = std::string("snapshot rejected (") + e.what() + "); rebuilt";
      }
    } else {
      retrieval_detail_ = "built from corpus";
    }
    retriever_->reindex(docs);
    if (!index.empty()) retriever_->save(index);
  } catch (const Error& e) {
    if (!config_.allow_degraded) throw;
    retrieval_detail_ = e.what();
  }
}

ChatResult Service::chat(const std::optional<std::string>& session_id, std::string_view message) {
  return pipeline_->handle_message(session_id, message);
}

Session Service::session(const std::string& id) const { return sessions_->get(id); }

std::vector<ComponentStatus> Service::components() const {
  std::lock_guard lock(admin_mutex_);
  std::vector<ComponentStatus> out;
  out.push_back({"safety_model", safety_->ready(), safety_detail_});
  out.push_back({"intent_model", intent_->ready(), intent_detail_});
  out.push_back({"retrieval", retriever_->ready(),
                 retriever_->ready()
                     ? std::to_string(retriever_->size()) + " documents; " + retrieval_detail_
                     : retrieval_detail_});
  out.push_back({"backend", true, backend_->name()});
  return out;
}

bool Service::ready() const {
  for (const auto& c : components()) {
    if (!c.ready) return false;
  }
  return true;
}

nlohmann::ordered_json Service::health() const {
  nlohmann::ordered_json j;
  const auto comps = components();
  bool all = true;
  nlohmann::ordered_json items = nlohmann::ordered_json::object();
  nlohmann::ordered_json degraded = nlohmann::ordered_json::array();
  for (const auto& c : comps) {
    items[c.name] = {{"ready", c.ready}, {"detail", c.detail}};
    if (!c.ready) {
      all = false;
      degraded.push_back(c.name);
    }
  }
  j["status"] = all ? "ready" : "degraded";
  j["components"] = std::move(items);
  j["degraded"] = std::move(degraded);
  return j;
}

std::size_t Service::reindex() {
  std::lock_guard lock(admin_mutex_);
  if (config_.corpus.empty()) throw Error(ErrorKind::config, "config key 'data.corpus': not set");
  const auto docs = retrieval::load_corpus_jsonl(config_.corpus);
  retriever_->reindex(docs);
  if (!config_.index.empty()) retriever_->save(config_.index);
  retrieval_detail_ = "reindexed from corpus";
  return docs.size();
}

}  // namespace edupsy::orchestrator
