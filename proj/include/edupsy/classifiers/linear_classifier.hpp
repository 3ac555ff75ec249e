// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edupsy/classifiers/featurizer.hpp"
#include "edupsy/classifiers/focal_loss.hpp"

namespace edupsy::classifiers {

/// Predicted probabilities are clamped to [kProbabilityClamp, 1 - kProbabilityClamp]
/// so the focal loss stays inside its domain.
inline constexpr double kProbabilityClamp = 1e-7;

struct LabeledExample {
  std::string text;
  Label label = Label::negative;
};

struct LinearClassifier {
  Eigen::VectorXd weights;
  double bias = 0.0;

  std::size_t dim() const { return static_cast<std::size_t>(weights.size()); }
  double logit(const FeatureVector& x) const { return x.dot(weights) + bias; }
};

LinearClassifier zero_classifier(std::size_t dim);

double sigmoid_clamped(double z);
double predict_proba(const LinearClassifier& clf, const FeatureVector& x);
/// Featurizes with the classifier's dim; throws validation on blank text.
double predict_proba(const LinearClassifier& clf, std::string_view text);

struct TrainOptions {
  FocalLossParams loss;
  std::size_t epochs = 20;
  double lr = 0.5;
  std::uint64_t seed = 0;
  std::size_t dim = 4096;
};

struct TrainingResult {
  LinearClassifier model;
  std::vector<double> epoch_loss;  // mean focal loss over the data after each epoch
};

/// Per-example SGD on the focal loss, reshuffled every epoch from `seed`.
/// Throws training for a single-class dataset, validation for bad options, and
/// training naming the learning rate when the loss stops being finite.
TrainingResult train(std::span<const LabeledExample> examples, const TrainOptions& options);

double mean_loss(const LinearClassifier& clf, std::span<const FeatureVector> xs,
                 std::span<const Label> ys, const FocalLossParams& loss);

}  // namespace edupsy::classifiers
