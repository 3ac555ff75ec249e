// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "edupsy/classifiers/model_io.hpp"
#include "edupsy/core/types.hpp"

namespace edupsy::classifiers {

/// Probability of a head's positive class for one text.
class ProbabilityScorer {
 public:
  virtual ~ProbabilityScorer() = default;
  virtual double score(std::string_view text) const = 0;
  virtual std::string describe() const = 0;
};

class LocalScorer final : public ProbabilityScorer {
 public:
  explicit LocalScorer(TextClassifier model) : model_(std::move(model)) {}
  double score(std::string_view text) const override { return model_.predict_proba(text); }
  std::string describe() const override { return "local:" + model_.head_name; }
  const TextClassifier& model() const { return model_; }

 private:
  TextClassifier model_;
};

/// POST {"text": ...} -> {"score": p}. Failures surface as Error(unavailable).
class RemoteScorer final : public ProbabilityScorer {
 public:
  RemoteScorer(std::string url, std::chrono::milliseconds timeout);
  double score(std::string_view text) const override;
  std::string describe() const override { return "remote:" + url_; }

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

struct SafetyVerdict {
  double score = 1.0;  // probability unsafe
  bool safe = false;
};

/// First pipeline stage. The scorer's positive class is "safe", so the
/// reported score is 1 - p(safe); a message passes iff score < threshold.
class SafetyGate {
 public:
  SafetyGate(std::shared_ptr<const ProbabilityScorer> scorer, double threshold);

  bool ready() const { return scorer_ != nullptr; }
  double threshold() const { return threshold_; }

  /// Throws unavailable when no model is loaded or the scorer fails.
  SafetyVerdict classify(std::string_view text) const;

 private:
  std::shared_ptr<const ProbabilityScorer> scorer_;
  double threshold_;
};

struct IntentVerdict {
  double score = 0.0;  // probability education
  Route route = Route::psychology;
};

/// Education iff score >= threshold; ties go to education.
class IntentRouter {
 public:
  IntentRouter(std::shared_ptr<const ProbabilityScorer> scorer, double threshold);

  bool ready() const { return scorer_ != nullptr; }
  double threshold() const { return threshold_; }

  IntentVerdict classify(std::string_view text) const;

 private:
  std::shared_ptr<const ProbabilityScorer> scorer_;
  double threshold_;
};

}  // namespace edupsy::classifiers
