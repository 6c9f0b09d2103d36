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
#include "tilekit/fracconv.hpp"

#include <algorithm>
#include <cmath>

#include "tilekit/parallel.hpp"

namespace tilekit {
namespace {

/// Dimension of one binary window: 0 when the window is empty (the no-edge
/// case feeds the scaling rule at d = 0), the box-count regression otherwise.
double window_dimension(const EdgeMap& window) {
  if (window.occupied_count() == 0) return 0.0;
  return fractal_dimension(window).dimension;
}

EdgeMap crop_map(const EdgeMap& map, int x0, int y0, int size) {
  EdgeMap out(size, size);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      out.data[static_cast<std::size_t>(y) * size + x] = map.at(x0 + x, y0 + y);
  return out;
}

}  // namespace

void FcParams::validate(int img_w, int img_h) const {
  if (patch < 2) throw InvalidArgument("patch size must be at least 2");
  if (patch > std::min(img_w, img_h)) throw InvalidArgument("patch exceeds image");
  if (stride < 1) throw InvalidArgument("stride must be positive");
  if (!(canny_low < canny_high)) throw InvalidArgument("thresholds inverted");
  if (threads < 1) throw InvalidArgument("thread count must be positive");
}

std::uint8_t scale_fd(double d) {
  if (!std::isfinite(d)) return 0;
  const long t = round_away(d * 127.0);
  if (t < 0) return 0;
  return clamp_u8(t + 1);
}

RichnessMask fractal_convolution(const RasterImage& img, const FcParams& params,
                                 std::vector<FdSample>* samples) {
  params.validate(img.width(), img.height());
  const int patch = params.patch;
  const int stride = params.stride;
  const RasterImage gray = to_grayscale(img);

  // Row/column counts of valid top-left positions.
  const int pos_rows = (img.height() - patch) / stride + 1;
  const int pos_cols = (img.width() - patch) / stride + 1;

  RichnessMask mask(img.width(), img.height());
  std::vector<std::vector<FdSample>> sample_bands;
  if (samples) sample_bands.resize(pos_rows);

  EdgeMap global_edges;
  if (params.global_canny)
    global_edges = canny(gray, params.canny_low, params.canny_high);

  parallel_bands(pos_rows, params.threads, [&](int row_begin, int row_end) {
    for (int r = row_begin; r < row_end; ++r) {
      const int i = r * stride;  // top row of the window
      const int cy = (2 * i + patch) / 2;
      for (int cpos = 0; cpos < pos_cols; ++cpos) {
        const int j = cpos * stride;  // left column of the window
        const int cx = (2 * j + patch) / 2;

        EdgeMap window_edges;
        if (params.global_canny) {
          window_edges = crop_map(global_edges, j, i, patch);
        } else {
          const RasterImage window = crop(gray, Rect{j, i, patch, patch});
          window_edges = canny(window, params.canny_low, params.canny_high);
        }
        // Re-threshold at the window's own mean. For a binary window this
        // keeps the occupied set unless the window is uniform.
        RasterImage window_bytes(patch, patch, 1, window_edges.data);
        const EdgeMap occupied = binarize(window_bytes, Threshold::mean());

        const double d = window_dimension(occupied);
        mask.data[static_cast<std::size_t>(cy) * mask.width + cx] = scale_fd(d);
        if (samples) sample_bands[r].push_back({cx, cy, d});
      }
    }
  });

  if (samples) {
    samples->clear();
    for (auto& band : sample_bands)
      samples->insert(samples->end(), band.begin(), band.end());
  }
  return mask;
}

RasterImage segment(const RasterImage& img, const RichnessMask& mask, SegmentMode mode,
                    std::uint8_t binary_threshold) {
  if (mask.width != img.width() || mask.height != img.height())
    throw InvalidArgument("mask/image size mismatch");
  RasterImage out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::uint8_t m = mask.at(x, y);
      for (int c = 0; c < img.channels(); ++c) {
        if (mode == SegmentMode::kScaled) {
          out.at(x, y, c) = round_clamp_u8(img.at(x, y, c) * (m / 255.0));
        } else {
          out.at(x, y, c) = m >= binary_threshold ? img.at(x, y, c) : 0;
        }
      }
    }
  }
  return out;
}

}  // namespace tilekit
