// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/classifiers/scorer.hpp"

#include <cmath>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/http_json.hpp"
#include "edupsy/core/text.hpp"

namespace edupsy::classifiers {

RemoteScorer::RemoteScorer(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {
  parse_endpoint(url_);
}

double RemoteScorer::score(std::string_view text) const {
  if (text::is_blank(text)) throw Error(ErrorKind::validation, "cannot score empty text");
  const auto reply = post_json(url_, {{"text", std::string(text)}}, timeout_);
  if (!reply.is_object() || !reply.contains("score") || !reply["score"].is_number()) {
    throw Error(ErrorKind::unavailable, "scorer " + url_ + " replied without a numeric score");
  }
  const double p = reply["score"].get<double>();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::unavailable, "scorer " + url_ + " returned a score outside [0, 1]");
  }
  return p;
}

namespace {

void check_threshold(double t) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::config, "threshold must lie in (0, 1)");
}

}  // namespace

SafetyGate::SafetyGate(std::shared_ptr<const ProbabilityScorer> scorer, double threshold)
    : scorer_(std::move(scorer)), threshold_(threshold) {
  check_threshold(threshold);
}

SafetyVerdict SafetyGate::classify(std::string_view text) const {
  if (!scorer_) throw Error(ErrorKind::unavailable, "safety model not loaded");
  double p_safe = 0.0;
  try {
    p_safe = scorer_->score(text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation) throw;
    throw Error(ErrorKind::unavailable, std::string("safety scorer failed: ") + e.what());
  }
  SafetyVerdict v;
  v.score = 1.0 - p_safe;
  v.safe = v.score < threshold_;
  return v;
}

IntentRouter::IntentRouter(std::shared_ptr<const ProbabilityScorer> scorer, double threshold)
    : scorer_(std::move(scorer)), threshold_(threshold) {
  check_threshold(threshold);
}

IntentVerdict IntentRouter::classify(std::string_view text) const {
  if (!scorer_) throw Error(ErrorKind::unavailable, "intent model not loaded");
  IntentVerdict v;
  try {
    v.score = scorer_->score(text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation) throw;
    throw Error(ErrorKind::unavailable, std::string("intent scorer failed: ") + e.what());
  }
  v.route = v.score >= threshold_ ? Route::education : Route::psychology;
  return v;
}

}  // namespace edupsy::classifiers
