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
#include <vector>

#include "tilekit/fractal.hpp"
#include "tilekit/image.hpp"

namespace tilekit {

/// Byte map of per-patch detail richness. Same dimensions as the scanned
/// image; positions never written by the scan stay 0.
struct RichnessMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RichnessMask() = default;
  RichnessMask(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  friend bool operator==(const RichnessMask&, const RichnessMask&) = default;
};

struct FcParams {
  int patch = 8;
  int stride = 1;
  double canny_low = 50.0;
  double canny_high = 150.0;
  /// Detect edges once over the whole image instead of per patch. Cheaper;
  /// patch values then come from counting inside the global edge map.
  bool global_canny = false;
  int threads = 1;

  void validate(int img_w, int img_h) const;
};

/// Raw dimension measured at one patch center, recorded before scaling.
struct FdSample {
  int cx = 0;
  int cy = 0;
  double fd = 0.0;
};

/// Map a dimension to a mask byte: t = round(d * 127); t >= 0 becomes t + 1,
/// negative regression output becomes 0; clamped to [0, 255]. A patch with
/// no edges enters as d = 0 and lands on 1.
std::uint8_t scale_fd(double d);

/// Slide a patch-sized window over the image (top-left positions stepping by
/// stride, windows that fit entirely). Each window is grayscale-converted,
/// edge-detected, binarized at the window's edge-map mean, measured by
/// box-counting, scaled, and written at the window center
/// ((2i+patch)/2, (2j+patch)/2). `samples`, when given, receives the raw
/// dimension per center in row-major center order.
RichnessMask fractal_convolution(const RasterImage& img, const FcParams& params,
                                 std::vector<FdSample>* samples = nullptr);

enum class SegmentMode { kScaled, kBinary };

/// Apply a richness mask to the image it was computed from. Scaled mode
/// multiplies each channel by mask/255; binary mode keeps pixels whose mask
/// value reaches the threshold and zeroes the rest.
RasterImage segment(const RasterImage& img, const RichnessMask& mask, SegmentMode mode,
                    std::uint8_t binary_threshold = 128);

}  // namespace tilekit
