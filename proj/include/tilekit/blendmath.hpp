/**
 * Copyright 2026 The tilekit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "tilekit/grid.hpp"

namespace tilekit {

/// A batch of scalar critic scores. Raw scores are unconstrained reals;
/// probability scores must lie strictly inside (0, 1).
struct ScoreBatch {
  enum class Kind { kRaw, kProbability };
  std::vector<double> values;
  Kind kind = Kind::kRaw;

  static ScoreBatch raw(std::vector<double> v) { return {std::move(v), Kind::kRaw}; }
  static ScoreBatch probability(std::vector<double> v) {
    return {std::move(v), Kind::kProbability};
  }
};

/// mean(real) - mean(fake). Both batches must be nonempty.
double wasserstein_loss(const ScoreBatch& real, const ScoreBatch& fake);

/// 0.5 * mean(ln real) + 0.5 * mean(ln(1 - fake)). Probability batches only;
/// any value outside (0,1) is rejected.
double js_loss(const ScoreBatch& real, const ScoreBatch& fake);

/// lambda * w + (1 - lambda) * js, lambda in [0, 1].
double combined_loss(double w, double js, double lambda);

/// Gradient step scaled by a per-layer coefficient:
/// out = params - alpha_i * lr * grads, elementwise.
FeatureGrid equalized_update(const FeatureGrid& params, const FeatureGrid& grads,
                             double lr, double alpha_i);

/// One cubic segment: a0 + a1*(x-xi) + a2*(x-xi)^2 + a3*(x-xi)^3.
struct SplineSegment {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
};

/// Natural cubic spline: zero second derivative at both ends, value and
/// first/second derivatives continuous at interior knots.
class SplineCurve {
 public:
  SplineCurve(std::vector<double> knots, std::vector<SplineSegment> segments)
      : knots_(std::move(knots)), segments_(std::move(segments)) {}

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<SplineSegment>& segments() const { return segments_; }

  /// Evaluate at x; outside the knot range the end segments extend.
  double eval(double x) const;
  double deriv1(double x) const;
  double deriv2(double x) const;

 private:
  std::size_t segment_index(double x) const;
  std::vector<double> knots_;
  std::vector<SplineSegment> segments_;
};

/// Interpolating natural cubic through the given points (>= 2, strictly
/// increasing x). Solved by the tridiagonal (Thomas) algorithm.
SplineCurve cubic_spline_fit(std::span<const std::pair<double, double>> points);

/// Weighted mix of two grids with the weight eased by the natural cubic
/// through (0,0), (0.5,0.5), (1,1): out = (1-w(t))*lo + w(t)*hi.
FeatureGrid spline_blend(const FeatureGrid& lo, const FeatureGrid& hi, double t);

/// alpha * prev + (1 - alpha) * conv, alpha in [0, 1].
FeatureGrid convex_blend(const FeatureGrid& prev, const FeatureGrid& conv, double alpha);

/// Nearest-neighbor upsampling: out(x, y) = g(x / factor, y / factor).
FeatureGrid nn_upsample(const FeatureGrid& g, int factor);

/// Elementwise sum of equally-shaped grids.
FeatureGrid feature_correct(const FeatureGrid& prev, const FeatureGrid& upsampled);

}  // namespace tilekit
