// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/agents/backend.hpp"

#include <algorithm>
#include <cctype>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/http_json.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::agents {

char answer_marker(std::string_view text) {
  constexpr std::string_view kKey = "answer:";
  for (std::size_t i = 0; i + kKey.size() < text.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < kKey.size() && match; ++j) {
      match = std::tolower(static_cast<unsigned char>(text[i + j])) == kKey[j];
    }
    if (!match) continue;
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i + kKey.size()])));
    if (c >= 'A' && c <= 'D') return c;
  }
  return '\0';
}

std::vector<std::string> cited_doc_ids(std::string_view text) {
  constexpr std::string_view kOpen = "[doc:";
  std::vector<std::string> ids;
  std::size_t pos = 0;
  while ((pos = text.find(kOpen, pos)) != std::string_view::npos) {
    const auto start = pos + kOpen.size();
    const auto close = text.find(']', start);
    if (close == std::string_view::npos) break;
    std::string id(text.substr(start, close - start));
    if (!id.empty() && std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    pos = close + 1;
  }
  return ids;
}

std::string ScriptedMockBackend::generate(const GenerationRequest& request) {
  const std::string_view last =
      request.messages.empty() ? std::string_view{} : std::string_view(request.messages.back().text);
  if (const char letter = answer_marker(last)) return std::string(1, letter);
  if (!request.context_ids.empty()) {
    std::string out = "Based on";
    for (const auto& id : request.context_ids) out += " [doc:" + id + "]";
    out += ".";
    return out;
  }
  const std::size_t turns = request.messages.empty() ? 0 : request.messages.size() - 1;
  return "I hear you: \"" + text::truncate_chars(text::trim(last), 60) + "\" (history turns: " +
         std::to_string(turns) + ")";
}

RemoteBackend::RemoteBackend(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {
  parse_endpoint(url_);
}

std::string RemoteBackend::generate(const GenerationRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", std::string(to_string(m.role))}, {"text", m.text}});
  }
  nlohmann::json reply;
  try {
    reply = post_json(url_, {{"system", request.system}, {"messages", messages}}, timeout_);
  } catch (const Error& e) {
    throw Error(ErrorKind::backend_unavailable, e.what());
  }
  if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string() ||
      text::is_blank(reply["text"].get<std::string>())) {
    throw Error(ErrorKind::backend_unavailable, "generation endpoint " + url_ + ": empty reply");
  }
  return reply["text"].get<std::string>();
}

CountingBackend::CountingBackend(std::shared_ptr<GenerationBackend> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw Error(ErrorKind::config, "counting backend needs an inner backend");
}

std::string CountingBackend::generate(const GenerationRequest& request) {
  ++calls_;
  return inner_->generate(request);
}

}  // namespace edupsy::agents
