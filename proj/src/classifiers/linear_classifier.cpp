// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#include "edupsy/classifiers/linear_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "edupsy/core/errors.hpp"
#include "edupsy/core/random.hpp"

namespace edupsy::classifiers {

LinearClassifier zero_classifier(std::size_t dim) {
  return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim)), 0.0};
}

double sigmoid_clamped(double z) {
  const double p = z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

double predict_proba(const LinearClassifier& clf, const FeatureVector& x) {
  return sigmoid_clamped(clf.logit(x));
}

double predict_proba(const LinearClassifier& clf, std::string_view text) {
  return predict_proba(clf, featurize(text, clf.dim()));
}

double mean_loss(const LinearClassifier& clf, std::span<const FeatureVector> xs,
                 std::span<const Label> ys, const FocalLossParams& loss) {
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    total += focal_loss(predict_proba(clf, xs[i]), ys[i], loss);
  }
  return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

TrainingResult train(std::span<const LabeledExample> examples, const TrainOptions& options) {
  options.loss.validate();
  if (options.epochs == 0) throw Error(ErrorKind::validation, "epochs must be >= 1");
  if (!(options.lr > 0.0) || !std::isfinite(options.lr)) {
    throw Error(ErrorKind::validation, "learning rate must be positive");
  }
  const bool has_pos = std::any_of(examples.begin(), examples.end(),
                                   [](const auto& e) { return e.label == Label::positive; });
  const bool has_neg = std::any_of(examples.begin(), examples.end(),
                                   [](const auto& e) { return e.label == Label::negative; });
  if (!has_pos || !has_neg) {
    throw Error(ErrorKind::training, "training data must contain both labels");
  }

  std::vector<FeatureVector> xs;
  std::vector<Label> ys;
  xs.reserve(examples.size());
  ys.reserve(examples.size());
  for (const auto& e : examples) {
    xs.push_back(featurize(e.text, options.dim));
    ys.push_back(e.label);
  }

  TrainingResult result{zero_classifier(options.dim), {}};
  LinearClassifier& clf = result.model;
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(options.seed);

  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t i : order) {
      const double p = predict_proba(clf, xs[i]);
      const double g = focal_loss_logit_gradient(p, ys[i], options.loss);
      for (FeatureVector::InnerIterator it(xs[i]); it; ++it) {
        clf.weights[it.index()] -= options.lr * g * it.value();
      }
      clf.bias -= options.lr * g;
    }
    const bool finite = std::isfinite(clf.bias) && clf.weights.allFinite();
    const double loss = finite ? mean_loss(clf, xs, ys, options.loss)
                               : std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "training diverged at epoch " << epoch << " (non-finite loss); lower the learning rate"
          << " (lr=" << options.lr << ")";
      throw Error(ErrorKind::training, msg.str());
    }
    result.epoch_loss.push_back(loss);
  }
  return result;
}

}  // namespace edupsy::classifiers
