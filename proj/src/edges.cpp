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
#include "tilekit/edges.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tilekit {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& w : k) w /= sum;
  return k;
}

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

/// Separable blur on a single channel of doubles, clamp-to-border.
void blur_channel(const double* src, double* dst, int w, int h,
                  const std::vector<double>& kernel, std::vector<double>& scratch) {
  const int radius = static_cast<int>(kernel.size() / 2);
  scratch.resize(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * src[static_cast<std::size_t>(y) * w + clampi(x + k, 0, w - 1)];
      scratch[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * scratch[static_cast<std::size_t>(clampi(y + k, 0, h - 1)) * w + x];
      dst[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
}

std::vector<double> image_to_doubles(const RasterImage& gray) {
  std::vector<double> v(gray.data().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = gray.data()[i];
  return v;
}

void sobel_doubles(const std::vector<double>& src, int w, int h,
                   std::vector<double>& gx, std::vector<double>& gy) {
  gx.resize(src.size());
  gy.resize(src.size());
  auto s = [&](int x, int y) {
    return src[static_cast<std::size_t>(clampi(y, 0, h - 1)) * w + clampi(x, 0, w - 1)];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double tl = s(x - 1, y - 1), tc = s(x, y - 1), tr = s(x + 1, y - 1);
      const double ml = s(x - 1, y), mr = s(x + 1, y);
      const double bl = s(x - 1, y + 1), bc = s(x, y + 1), br = s(x + 1, y + 1);
      gx[static_cast<std::size_t>(y) * w + x] = (tr + 2 * mr + br) - (tl + 2 * ml + bl);
      gy[static_cast<std::size_t>(y) * w + x] = (bl + 2 * bc + br) - (tl + 2 * tc + tr);
    }
  }
}

}  // namespace

std::size_t EdgeMap::occupied_count() const {
  return static_cast<std::size_t>(std::count(data.begin(), data.end(), 255));
}

RasterImage gaussian_blur(const RasterImage& gray, double sigma) {
  if (sigma <= 0.0) throw InvalidArgument("invalid sigma");
  if (gray.channels() != 1) throw InvalidArgument("gaussian_blur expects a 1-channel image");
  const auto kernel = gaussian_kernel(sigma);
  std::vector<double> src = image_to_doubles(gray);
  std::vector<double> dst(src.size()), scratch;
  blur_channel(src.data(), dst.data(), gray.width(), gray.height(), kernel, scratch);
  RasterImage out(gray.width(), gray.height(), 1);
  for (std::size_t i = 0; i < dst.size(); ++i) out.data()[i] = round_clamp_u8(dst[i]);
  return out;
}

FeatureGrid gaussian_blur_grid(const FeatureGrid& grid, double sigma) {
  if (sigma <= 0.0) throw InvalidArgument("invalid sigma");
  FeatureGrid out(grid.width(), grid.height(), grid.channels());
  const std::size_t plane = static_cast<std::size_t>(grid.width()) * grid.height();
  const auto kernel = gaussian_kernel(sigma);
  std::vector<double> src(plane), dst(plane), scratch;
  for (int c = 0; c < grid.channels(); ++c) {
    for (int y = 0; y < grid.height(); ++y)
      for (int x = 0; x < grid.width(); ++x)
        src[static_cast<std::size_t>(y) * grid.width() + x] = grid.at(x, y, c);
    blur_channel(src.data(), dst.data(), grid.width(), grid.height(), kernel, scratch);
    for (int y = 0; y < grid.height(); ++y)
      for (int x = 0; x < grid.width(); ++x)
        out.at(x, y, c) = dst[static_cast<std::size_t>(y) * grid.width() + x];
  }
  return out;
}

std::pair<FeatureGrid, FeatureGrid> sobel(const RasterImage& gray) {
  if (gray.channels() != 1) throw InvalidArgument("sobel expects a 1-channel image");
  if (gray.width() < 3 || gray.height() < 3) throw InvalidArgument("image too small");
  std::vector<double> src = image_to_doubles(gray), gx, gy;
  sobel_doubles(src, gray.width(), gray.height(), gx, gy);
  return {FeatureGrid(gray.width(), gray.height(), 1, std::move(gx)),
          FeatureGrid(gray.width(), gray.height(), 1, std::move(gy))};
}

std::pair<FeatureGrid, FeatureGrid> sobel_grid(const FeatureGrid& gray) {
  if (gray.channels() != 1) throw InvalidArgument("sobel expects a 1-channel grid");
  if (gray.width() < 3 || gray.height() < 3) throw InvalidArgument("image too small");
  std::vector<double> gx, gy;
  sobel_doubles(gray.data(), gray.width(), gray.height(), gx, gy);
  return {FeatureGrid(gray.width(), gray.height(), 1, std::move(gx)),
          FeatureGrid(gray.width(), gray.height(), 1, std::move(gy))};
}

EdgeMap canny(const RasterImage& gray, double low, double high) {
  if (gray.channels() != 1) throw InvalidArgument("canny expects a 1-channel image");
  if (!(low < high)) throw InvalidArgument("thresholds inverted");
  const int w = gray.width(), h = gray.height();
  if (w < 3 || h < 3) throw InvalidArgument("image too small");

  // Smooth (sigma pinned at 1.4), then gradients.
  const auto kernel = gaussian_kernel(1.4);
  std::vector<double> src = image_to_doubles(gray);
  std::vector<double> smoothed(src.size()), scratch;
  blur_channel(src.data(), smoothed.data(), w, h, kernel, scratch);
  std::vector<double> gx, gy;
  sobel_doubles(smoothed, w, h, gx, gy);

  std::vector<double> mag(src.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(gx[i], gy[i]);

  // Non-maximum suppression. The gradient direction is quantized to four
  // bins; a boundary angle lands in the horizontal bin where that bin is a
  // candidate. Of two equal-magnitude neighbors along the gradient, the one
  // first in scan order survives (>= forward, > backward).
  auto mag_at = [&](int x, int y) -> double {
    if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };
  std::vector<std::uint8_t> kept(src.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (mag[i] <= 0.0) continue;
      double angle = std::atan2(gy[i], gx[i]) * 180.0 / kPi;
      if (angle < 0.0) angle += 180.0;
      int dx, dy;
      if (angle <= 22.5 || angle >= 157.5) {
        dx = 1; dy = 0;
      } else if (angle <= 67.5) {
        dx = 1; dy = 1;
      } else if (angle <= 112.5) {
        dx = 0; dy = 1;
      } else {
        dx = -1; dy = 1;
      }
      const double fwd = mag_at(x + dx, y + dy);
      const double bwd = mag_at(x - dx, y - dy);
      if (mag[i] >= fwd && mag[i] > bwd) kept[i] = 1;
    }
  }

  // Double threshold + hysteresis (8-connectivity flood from strong pixels).
  EdgeMap out(w, h);
  std::vector<std::size_t> stack;
  std::vector<std::uint8_t> state(src.size(), 0);  // 1 = weak, 2 = strong
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!kept[i]) continue;
    if (mag[i] >= high) {
      state[i] = 2;
      stack.push_back(i);
    } else if (mag[i] >= low) {
      state[i] = 1;
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    out.data[i] = 255;
    const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
        if (state[ni] == 1) {
          state[ni] = 2;
          stack.push_back(ni);
        }
      }
    }
  }
  return out;
}

}  // namespace tilekit
