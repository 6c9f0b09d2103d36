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
#include "tilekit/blendmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tilekit {
namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void require_same_shape(const FeatureGrid& a, const FeatureGrid& b) {
  if (!a.same_shape(b)) throw InvalidArgument("grid shape mismatch");
}

}  // namespace

double wasserstein_loss(const ScoreBatch& real, const ScoreBatch& fake) {
  if (real.values.empty() || fake.values.empty())
    throw InvalidArgument("score batch is empty");
  return mean_of(real.values) - mean_of(fake.values);
}

double js_loss(const ScoreBatch& real, const ScoreBatch& fake) {
  if (real.values.empty() || fake.values.empty())
    throw InvalidArgument("score batch is empty");
  if (real.kind != ScoreBatch::Kind::kProbability ||
      fake.kind != ScoreBatch::Kind::kProbability)
    throw InvalidArgument("not a probability");
  double sum_real = 0.0, sum_fake = 0.0;
  for (double v : real.values) {
    if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("not a probability");
    sum_real += std::log(v);
  }
  for (double v : fake.values) {
    if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("not a probability");
    sum_fake += std::log(1.0 - v);
  }
  return 0.5 * sum_real / real.values.size() + 0.5 * sum_fake / fake.values.size();
}

double combined_loss(double w, double js, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("lambda outside [0, 1]");
  return lambda * w + (1.0 - lambda) * js;
}

FeatureGrid equalized_update(const FeatureGrid& params, const FeatureGrid& grads,
                             double lr, double alpha_i) {
  require_same_shape(params, grads);
  if (!(lr > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (!(alpha_i >= 0.0)) throw InvalidArgument("layer coefficient must be nonnegative");
  FeatureGrid out = params;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = params.data()[i] - alpha_i * lr * grads.data()[i];
  return out;
}

std::size_t SplineCurve::segment_index(double x) const {
  // knots_[k] <= x < knots_[k+1]; clamp to the end segments outside.
  if (x <= knots_.front()) return 0;
  if (x >= knots_.back()) return segments_.size() - 1;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

double SplineCurve::eval(double x) const {
  const std::size_t k = segment_index(x);
  const double t = x - knots_[k];
  const SplineSegment& s = segments_[k];
  return ((s.a3 * t + s.a2) * t + s.a1) * t + s.a0;
}

double SplineCurve::deriv1(double x) const {
  const std::size_t k = segment_index(x);
  const double t = x - knots_[k];
  const SplineSegment& s = segments_[k];
  return (3.0 * s.a3 * t + 2.0 * s.a2) * t + s.a1;
}

double SplineCurve::deriv2(double x) const {
  const std::size_t k = segment_index(x);
  const double t = x - knots_[k];
  const SplineSegment& s = segments_[k];
  return 6.0 * s.a3 * t + 2.0 * s.a2;
}

SplineCurve cubic_spline_fit(std::span<const std::pair<double, double>> points) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("spline needs at least two points");
  for (std::size_t i = 1; i < n; ++i)
    if (!(points[i].first > points[i - 1].first))
      throw InvalidArgument("spline abscissae must be strictly increasing");

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = points[i + 1].first - points[i].first;

  // Second derivatives m[i] at the knots; natural closure m[0] = m[n-1] = 0.
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    const std::size_t unknowns = n - 2;
    std::vector<double> diag(unknowns), upper(unknowns), rhs(unknowns);
    for (std::size_t i = 0; i < unknowns; ++i) {
      diag[i] = 2.0 * (h[i] + h[i + 1]);
      upper[i] = h[i + 1];
      const double d1 = (points[i + 2].second - points[i + 1].second) / h[i + 1];
      const double d0 = (points[i + 1].second - points[i].second) / h[i];
      rhs[i] = 6.0 * (d1 - d0);
    }
    // Thomas algorithm; the lower diagonal equals h[i] shifted by one.
    for (std::size_t i = 1; i < unknowns; ++i) {
      const double w = h[i] / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[unknowns] = rhs[unknowns - 1] / diag[unknowns - 1];
    for (std::size_t i = unknowns - 1; i > 0; --i)
      m[i] = (rhs[i - 1] - upper[i - 1] * m[i + 1]) / diag[i - 1];
  }

  std::vector<double> knots(n);
  for (std::size_t i = 0; i < n; ++i) knots[i] = points[i].first;
  std::vector<SplineSegment> segments(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double yi = points[i].second, yj = points[i + 1].second;
    SplineSegment& s = segments[i];
    s.a0 = yi;
    s.a1 = (yj - yi) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    s.a2 = m[i] / 2.0;
    s.a3 = (m[i + 1] - m[i]) / (6.0 * h[i]);
  }
  return SplineCurve(std::move(knots), std::move(segments));
}

FeatureGrid spline_blend(const FeatureGrid& lo, const FeatureGrid& hi, double t) {
  require_same_shape(lo, hi);
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("t outside [0, 1]");
  static const SplineCurve ease = [] {
    const std::pair<double, double> pts[] = {{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}};
    return cubic_spline_fit(pts);
  }();
  double w = ease.eval(t);
  if (t == 0.0) w = 0.0;  // endpoint exactness regardless of fp residue
  if (t == 1.0) w = 1.0;
  FeatureGrid out = lo;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = (1.0 - w) * lo.data()[i] + w * hi.data()[i];
  return out;
}

FeatureGrid convex_blend(const FeatureGrid& prev, const FeatureGrid& conv, double alpha) {
  require_same_shape(prev, conv);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha outside [0, 1]");
  FeatureGrid out = prev;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = alpha * prev.data()[i] + (1.0 - alpha) * conv.data()[i];
  return out;
}

FeatureGrid nn_upsample(const FeatureGrid& g, int factor) {
  if (factor < 1) throw InvalidArgument("upsample factor must be at least 1");
  if (factor == 1) return g;
  FeatureGrid out(g.width() * factor, g.height() * factor, g.channels());
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      for (int c = 0; c < g.channels(); ++c)
        out.at(x, y, c) = g.at(x / factor, y / factor, c);
  return out;
}

FeatureGrid feature_correct(const FeatureGrid& prev, const FeatureGrid& upsampled) {
  require_same_shape(prev, upsampled);
  FeatureGrid out = prev;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = prev.data()[i] + upsampled.data()[i];
  return out;
}

}  // namespace tilekit
