// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "edupsy/core/errors.hpp"

namespace edupsy::classifiers {

enum class Label { negative = 0, positive = 1 };

/// gamma is the focusing exponent on (1 - p_t); alpha weights the positive
/// class only (negatives carry weight 1), so gamma = 0, alpha = 1 is plain
/// binary cross-entropy.
struct FocalLossParams {
  double gamma = 2.0;
  double alpha = 0.25;

  void validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw Error(ErrorKind::validation, "focal loss gamma must be >= 0");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw Error(ErrorKind::validation, "focal loss alpha must lie in (0, 1]");
    }
  }

  static FocalLossParams cross_entropy() { return {0.0, 1.0}; }
};

/// Probability assigned to the true label.
template <typename Scalar>
Scalar prob_of_label(Scalar p, Label y) {
  return y == Label::positive ? p : Scalar(1) - p;
}

template <typename Scalar>
Scalar class_weight(Label y, const FocalLossParams& params) {
  return y == Label::positive ? static_cast<Scalar>(params.alpha) : Scalar(1);
}

/// -alpha_t (1 - p_t)^gamma ln(p_t), with p the predicted probability of the
/// positive class. Throws domain unless 0 < p < 1.
template <typename Scalar>
Scalar focal_loss(Scalar p, Label y, const FocalLossParams& params) {
  if (!(p > Scalar(0) && p < Scalar(1))) {
    throw Error(ErrorKind::domain, "focal loss probability must lie in (0, 1)");
  }
  const Scalar pt = prob_of_label(p, y);
  const Scalar gamma = static_cast<Scalar>(params.gamma);
  const Scalar modulator = gamma == Scalar(0) ? Scalar(1) : std::pow(Scalar(1) - pt, gamma);
  return -class_weight<Scalar>(y, params) * modulator * std::log(pt);
}

/// d(focal_loss)/dz for p = sigmoid(z):
///   alpha_t * s * (1 - p_t)^gamma * (gamma * p_t * ln(p_t) - (1 - p_t)),
/// with s = +1 for positives and -1 for negatives.
template <typename Scalar>
Scalar focal_loss_logit_gradient(Scalar p, Label y, const FocalLossParams& params) {
  const Scalar pt = prob_of_label(p, y);
  const Scalar q = Scalar(1) - pt;
  const Scalar gamma = static_cast<Scalar>(params.gamma);
  const Scalar modulator = gamma == Scalar(0) ? Scalar(1) : std::pow(q, gamma);
  const Scalar sign = y == Label::positive ? Scalar(1) : Scalar(-1);
  return class_weight<Scalar>(y, params) * sign * modulator * (gamma * pt * std::log(pt) - q);
}

}  // namespace edupsy::classifiers
