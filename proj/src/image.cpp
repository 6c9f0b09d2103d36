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
#include "tilekit/image.hpp"

#include <algorithm>
#include <array>

namespace tilekit {
namespace {

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

/// Keys cubic convolution kernel, a = -0.5. Weights at integer offsets are
/// {0,1,0,0}, so same-size resize is an exact copy.
double cubic_weight(double t) {
  constexpr double a = -0.5;
  t = std::abs(t);
  if (t < 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

}  // namespace

Rect intersect(const Rect& a, const Rect& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right());
  const int y1 = std::min(a.bottom(), b.bottom());
  return Rect{x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

RasterImage::RasterImage(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 1 || height < 1) throw InvalidArgument("image dimensions must be positive");
  if (channels != 1 && channels != 3) throw InvalidArgument("channels must be 1 or 3");
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

RasterImage::RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (width < 1 || height < 1) throw InvalidArgument("image dimensions must be positive");
  if (channels != 1 && channels != 3) throw InvalidArgument("channels must be 1 or 3");
  if (data_.size() != static_cast<std::size_t>(width) * height * channels)
    throw InvalidArgument("data length does not match width*height*channels");
}

std::uint8_t RasterImage::at_clamped(int x, int y, int c) const {
  return at(clampi(x, 0, width_ - 1), clampi(y, 0, height_ - 1), c);
}

RasterImage to_grayscale(const RasterImage& img) {
  if (img.channels() == 1) return img;
  RasterImage out(img.width(), img.height(), 1);
  const std::uint8_t* src = img.data().data();
  std::uint8_t* dst = out.data().data();
  const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
  for (std::size_t i = 0; i < n; ++i) {
    const double luma = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    dst[i] = round_clamp_u8(luma);
  }
  return out;
}

RasterImage to_rgb(const RasterImage& img) {
  if (img.channels() == 3) return img;
  RasterImage out(img.width(), img.height(), 3);
  const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t v = img.data()[i];
    out.data()[3 * i] = v;
    out.data()[3 * i + 1] = v;
    out.data()[3 * i + 2] = v;
  }
  return out;
}

RasterImage resize(const RasterImage& img, int new_w, int new_h, ResizeMode mode) {
  if (new_w < 1 || new_h < 1) throw InvalidArgument("empty target");
  if (new_w == img.width() && new_h == img.height()) return img;

  RasterImage out(new_w, new_h, img.channels());
  const double sx = static_cast<double>(img.width()) / new_w;
  const double sy = static_cast<double>(img.height()) / new_h;
  const int ch = img.channels();

  if (mode == ResizeMode::kNearest) {
    for (int y = 0; y < new_h; ++y) {
      const int yi = clampi(static_cast<int>((y + 0.5) * sy), 0, img.height() - 1);
      for (int x = 0; x < new_w; ++x) {
        const int xi = clampi(static_cast<int>((x + 0.5) * sx), 0, img.width() - 1);
        for (int c = 0; c < ch; ++c) out.at(x, y, c) = img.at(xi, yi, c);
      }
    }
    return out;
  }

  if (mode == ResizeMode::kBilinear) {
    for (int y = 0; y < new_h; ++y) {
      const double fy = (y + 0.5) * sy - 0.5;
      const int y0 = static_cast<int>(std::floor(fy));
      const double wy = fy - y0;
      for (int x = 0; x < new_w; ++x) {
        const double fx = (x + 0.5) * sx - 0.5;
        const int x0 = static_cast<int>(std::floor(fx));
        const double wx = fx - x0;
        for (int c = 0; c < ch; ++c) {
          const double v00 = img.at_clamped(x0, y0, c);
          const double v10 = img.at_clamped(x0 + 1, y0, c);
          const double v01 = img.at_clamped(x0, y0 + 1, c);
          const double v11 = img.at_clamped(x0 + 1, y0 + 1, c);
          const double v = (1 - wy) * ((1 - wx) * v00 + wx * v10) +
                           wy * ((1 - wx) * v01 + wx * v11);
          out.at(x, y, c) = round_clamp_u8(v);
        }
      }
    }
    return out;
  }

  // Bicubic
  for (int y = 0; y < new_h; ++y) {
    const double fy = (y + 0.5) * sy - 0.5;
    const int y0 = static_cast<int>(std::floor(fy));
    const double ty = fy - y0;
    std::array<double, 4> wy;
    for (int k = 0; k < 4; ++k) wy[k] = cubic_weight(ty - (k - 1));
    for (int x = 0; x < new_w; ++x) {
      const double fx = (x + 0.5) * sx - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const double tx = fx - x0;
      std::array<double, 4> wx;
      for (int k = 0; k < 4; ++k) wx[k] = cubic_weight(tx - (k - 1));
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) {
          double row = 0.0;
          for (int i = 0; i < 4; ++i)
            row += wx[i] * img.at_clamped(x0 + i - 1, y0 + j - 1, c);
          acc += wy[j] * row;
        }
        out.at(x, y, c) = round_clamp_u8(acc);
      }
    }
  }
  return out;
}

RasterImage hflip(const RasterImage& img) {
  RasterImage out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c)
        out.at(x, y, c) = img.at(img.width() - 1 - x, y, c);
  return out;
}

RasterImage crop(const RasterImage& img, const Rect& r) {
  if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 || r.right() > img.width() ||
      r.bottom() > img.height())
    throw InvalidArgument("rect outside image");
  RasterImage out(r.w, r.h, img.channels());
  for (int y = 0; y < r.h; ++y)
    for (int x = 0; x < r.w; ++x)
      for (int c = 0; c < img.channels(); ++c)
        out.at(x, y, c) = img.at(r.x + x, r.y + y, c);
  return out;
}

}  // namespace tilekit
