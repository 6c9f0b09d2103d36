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
#include <vector>

#include "tilekit/edges.hpp"
#include "tilekit/image.hpp"

namespace tilekit {

/// Thresholding rule for binarize().
struct Threshold {
  enum class Mode { kMean, kFixed };
  Mode mode = Mode::kMean;
  std::uint8_t value = 0;

  static Threshold mean() { return {Mode::kMean, 0}; }
  static Threshold fixed(std::uint8_t v) { return {Mode::kFixed, v}; }
};

/// samples strictly greater than the threshold become 255, the rest 0.
/// Mean mode computes the image mean first.
EdgeMap binarize(const RasterImage& gray, Threshold threshold);

struct BoxCountEntry {
  int size = 0;          // box side in pixels
  long long count = 0;   // occupied boxes at that side
};

/// (s, N(s)) pairs, sizes strictly decreasing.
struct BoxCountSeries {
  std::vector<BoxCountEntry> entries;
};

struct FdResult {
  double dimension = 0.0;   // clamped to [0, 2]
  double r_squared = 0.0;   // fit quality of the log-log regression
  BoxCountSeries series;
};

/// For each size s: number of grid-aligned s x s cells, anchored at the
/// origin with partial cells at the right/bottom included, that contain at
/// least one occupied pixel. Sizes must satisfy 1 <= s <= min(width, height).
BoxCountSeries box_count(const EdgeMap& map, std::span<const int> sizes);

/// Descending powers of two from the largest power <= min_dim/2 down to 2.
/// When that yields fewer than two sizes (maps narrower than 8 pixels), the
/// schedule is padded with {2, 1} so the regression stays defined.
std::vector<int> box_size_schedule(int min_dim);

/// Box-counting dimension: least-squares slope of ln N(s) against ln(1/s)
/// over the power-of-two schedule, clamped to [0, 2]. The map must contain
/// at least one occupied pixel.
FdResult fractal_dimension(const EdgeMap& map);

}  // namespace tilekit
