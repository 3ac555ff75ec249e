// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/agents/agents.hpp"

#include <algorithm>
#include <chrono>

#include "edupsy/core/text.hpp"

namespace edupsy::agents {
namespace {

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               since)
      .count();
}

void generate_into(GenerationBackend& backend, const GenerationRequest& request, AgentReply& reply) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    reply.text = backend.generate(request);
    if (text::is_blank(reply.text)) {
      throw Error(ErrorKind::backend_unavailable, "backend returned empty text");
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::backend_unavailable && e.kind() != ErrorKind::timeout &&
        e.kind() != ErrorKind::unavailable) {
      throw;
    }
    reply.text.clear();
    reply.error = ErrorKind::backend_unavailable;
    reply.note = e.what();
  }
  reply.backend_latency_ms = elapsed_ms(t0);
}

}  // namespace

std::vector<std::string> AgentReply::contexts_used() const {
  std::vector<std::string> ids;
  ids.reserve(contexts.size());
  for (const auto& c : contexts) ids.push_back(c.id);
  return ids;
}

EducationAgent::EducationAgent(std::shared_ptr<const retrieval::Retriever> retriever,
                               std::shared_ptr<GenerationBackend> backend, PromptBuilder builder,
                               EducationOptions options)
    : retriever_(std::move(retriever)),
      backend_(std::move(backend)),
      builder_(std::move(builder)),
      options_(options) {
  if (!backend_) throw Error(ErrorKind::config, "education agent needs a backend");
  if (options_.rerank_m == 0 || options_.retrieve_k == 0 ||
      options_.rerank_m > options_.retrieve_k) {
    throw Error(ErrorKind::config, "config key 'rerank_m': must be in [1, retrieve_k]");
  }
}

AgentReply EducationAgent::answer(std::string_view question) const {
  if (text::is_blank(question)) throw Error(ErrorKind::validation, "question must not be empty");
  AgentReply reply;
  reply.route = Route::education;

  std::vector<retrieval::Document> docs;
  const auto t0 = std::chrono::steady_clock::now();
  if (retriever_) {
    reply.retrieval_attempted = true;
    try {
      auto result = retriever_->retrieve(question, options_.retrieve_k, options_.rerank_m);
      for (const auto& h : result.hits) reply.retrieval_ids.push_back(h.doc_id);
      for (const auto& c : result.contexts) {
        reply.contexts.push_back({c.doc.id, c.doc.title, c.score, c.similarity});
        docs.push_back(c.doc);
      }
      reply.degraded = result.degraded;
      reply.note = result.note;
      if (result.hits.empty()) {
        reply.degraded = true;
        reply.note = "index is empty; answering without context";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::retrieval_unavailable && e.kind() != ErrorKind::unavailable) throw;
      reply.degraded = true;
      reply.note = std::string("retrieval unavailable: ") + e.what();
    }
  } else {
    reply.degraded = true;
    reply.note = "retrieval not configured; answering without context";
  }
  reply.retrieval_latency_ms = elapsed_ms(t0);

  const auto prompt = builder_.education(question, docs);
  reply.prompt_hash = builder_.hash(prompt);
  generate_into(*backend_, builder_.request(prompt), reply);

  if (!reply.error) {
    const auto used = reply.contexts_used();
    for (const auto& id : cited_doc_ids(reply.text)) {
      if (std::find(used.begin(), used.end(), id) == used.end()) reply.invalid_citations.push_back(id);
    }
    if (!reply.invalid_citations.empty()) ++citation_violations_;
  }
  return reply;
}

PsychologyAgent::PsychologyAgent(std::shared_ptr<GenerationBackend> backend, PromptBuilder builder,
                                 std::size_t window)
    : backend_(std::move(backend)), builder_(std::move(builder)), window_(window) {
  if (!backend_) throw Error(ErrorKind::config, "psychology agent needs a backend");
  if (window_ == 0) throw Error(ErrorKind::config, "config key 'history_window': must be positive");
}

AgentReply PsychologyAgent::answer(std::span<const ChatTurn> history,
                                   std::string_view question) const {
  AgentReply reply;
  reply.route = Route::psychology;
  const auto prompt = builder_.psychology(history, question, window_);
  reply.prompt_hash = builder_.hash(prompt);
  generate_into(*backend_, builder_.request(prompt), reply);
  return reply;
}

}  // namespace edupsy::agents
