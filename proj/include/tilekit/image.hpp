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

#include <cmath>
#include <cstdint>
#include <vector>

#include "tilekit/error.hpp"

namespace tilekit {

/// The single rounding rule used for all byte arithmetic in the library:
/// round half away from zero. Pinned so byte outputs are identical on
/// every platform.
inline long round_away(double v) { return std::lround(v); }

inline std::uint8_t clamp_u8(long v) {
  if (v < 0) return 0;
  if (v > 255) return 255;
  return static_cast<std::uint8_t>(v);
}

inline std::uint8_t round_clamp_u8(double v) { return clamp_u8(round_away(v)); }

/// Axis-aligned rectangle, top-left origin, in pixel units.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }    // exclusive
  int bottom() const { return y + h; }   // exclusive
  double center_x() const { return x + w / 2.0; }
  double center_y() const { return y + h / 2.0; }

  bool contains(int px, int py) const {
    return px >= x && px < right() && py >= y && py < bottom();
  }
  bool overlaps(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Intersection of two rects; result has w==0 or h==0 when disjoint.
Rect intersect(const Rect& a, const Rect& b);

enum class ResizeMode { kNearest, kBilinear, kBicubic };

/// 8-bit raster image, 1 (gray) or 3 (RGB) channels, row-major, interleaved.
/// Immutable by convention: operations return new images.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, int channels, std::uint8_t fill = 0);
  RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }

  std::uint8_t at(int x, int y, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  /// Clamp-to-border sample.
  std::uint8_t at_clamped(int x, int y, int c = 0) const;

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  bool same_shape(const RasterImage& o) const {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }
  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<std::uint8_t> data_;
};

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B). 1-channel input passes
/// through unchanged.
RasterImage to_grayscale(const RasterImage& img);

/// Replicate a 1-channel image into 3 identical channels; 3-channel input
/// passes through unchanged.
RasterImage to_rgb(const RasterImage& img);

RasterImage resize(const RasterImage& img, int new_w, int new_h, ResizeMode mode);

RasterImage hflip(const RasterImage& img);

RasterImage crop(const RasterImage& img, const Rect& r);

}  // namespace tilekit
