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

#include <cstdint>
#include <utility>
#include <vector>

#include "tilekit/grid.hpp"
#include "tilekit/image.hpp"

namespace tilekit {

/// Binary byte map: every sample is 0 or 255.
struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  EdgeMap() = default;
  EdgeMap(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  void set(int x, int y, bool on) {
    data[static_cast<std::size_t>(y) * width + x] = on ? 255 : 0;
  }
  std::size_t occupied_count() const;

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;
};

/// Separable Gaussian convolution, kernel radius ceil(3*sigma), borders
/// replicated. Single-channel byte in/out; sigma must be positive.
RasterImage gaussian_blur(const RasterImage& gray, double sigma);

/// Gaussian blur of a grid, per channel, same kernel and border rule as the
/// byte variant but without quantization. Used where downstream math needs
/// full precision.
FeatureGrid gaussian_blur_grid(const FeatureGrid& grid, double sigma);

/// Standard 3x3 Sobel gradients (x: dark-to-bright left-to-right, y:
/// top-to-bottom), borders replicated. Requires at least a 3x3 image.
std::pair<FeatureGrid, FeatureGrid> sobel(const RasterImage& gray);
std::pair<FeatureGrid, FeatureGrid> sobel_grid(const FeatureGrid& gray);

/// Canny detector with pinned internals: Gaussian smoothing sigma 1.4,
/// Sobel gradients, L2 magnitude, non-maximum suppression over 4 quantized
/// directions (ties resolved toward the horizontal bin), double threshold,
/// hysteresis by 8-connectivity. Requires low < high.
EdgeMap canny(const RasterImage& gray, double low = 50.0, double high = 150.0);

}  // namespace tilekit
