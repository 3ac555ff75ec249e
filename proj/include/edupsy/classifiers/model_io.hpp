// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "edupsy/classifiers/linear_classifier.hpp"

namespace edupsy::classifiers {

inline constexpr int kModelFormatVersion = 1;

/// A trained head: featurizer settings + linear weights. The decision
/// threshold lives in the service config, not in the model.
struct TextClassifier {
  std::string head_name;  // "safety" or "intent"
  LinearClassifier linear;
  FocalLossParams loss;   // as trained, informational

  double predict_proba(std::string_view text) const {
    return classifiers::predict_proba(linear, text);
  }
};

nlohmann::json to_json(const TextClassifier& model);
TextClassifier text_classifier_from_json(const nlohmann::json& j);

void save_model(const TextClassifier& model, const std::filesystem::path& path);
/// Throws io when unreadable, format on schema or version mismatch.
TextClassifier load_model(const std::filesystem::path& path);

/// Training JSONL: {"text": "...", "label": 1} per line (1 = positive).
std::vector<LabeledExample> load_training_jsonl(const std::filesystem::path& path);
void save_training_jsonl(std::span<const LabeledExample> examples, const std::filesystem::path& path);

}  // namespace edupsy::classifiers
