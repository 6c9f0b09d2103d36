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

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "tilekit/edges.hpp"
#include "tilekit/image.hpp"
#include "tilekit/rng.hpp"

namespace tkfix {

using tilekit::EdgeMap;
using tilekit::RasterImage;

inline RasterImage constant(int w, int h, std::uint8_t v, int channels = 1) {
  return RasterImage(w, h, channels, v);
}

inline RasterImage checkerboard(int w, int h, int cell, std::uint8_t lo = 0,
                                std::uint8_t hi = 255) {
  RasterImage img(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.at(x, y) = ((x / cell + y / cell) % 2 == 0) ? lo : hi;
  return img;
}

/// Left half dark, right half bright, hard vertical step at w/2.
inline RasterImage half_plane(int w, int h, std::uint8_t lo = 0, std::uint8_t hi = 255) {
  RasterImage img(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.at(x, y) = x < w / 2 ? lo : hi;
  return img;
}

inline RasterImage gradient_ramp(int w, int h) {
  RasterImage img(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.at(x, y) = static_cast<std::uint8_t>((x * 255) / std::max(1, w - 1));
  return img;
}

/// Seeded color texture: smooth blobs plus per-pixel detail, reproducible.
inline RasterImage textured_rgb(int w, int h, std::uint64_t seed) {
  tilekit::Rng rng(seed);
  const double ph1 = rng.uniform01() * 6.28, ph2 = rng.uniform01() * 6.28;
  RasterImage img(w, h, 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double base = 96 + 48 * std::sin(x * 0.11 + ph1) + 40 * std::cos(y * 0.07 + ph2);
      const double detail = 30 * std::sin(x * 0.9 + y * 1.3);
      img.at(x, y, 0) = tilekit::round_clamp_u8(base + detail);
      img.at(x, y, 1) = tilekit::round_clamp_u8(0.8 * base + 20 * std::cos(x * 0.5));
      img.at(x, y, 2) = tilekit::round_clamp_u8(0.6 * base + detail * 0.5 + 25);
    }
  }
  return img;
}

/// High-contrast asymmetric scene: checker field, bright disk, dark bar.
/// Edges survive heavy smoothing, so detector tests have real content.
inline RasterImage detailed_scene(int w, int h) {
  RasterImage img = checkerboard(w, h, 12, 30, 220);
  const double cx = w * 0.3, cy = h * 0.42, r = std::min(w, h) * 0.16;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) < r * r) img.at(x, y) = 245;
      if (x > w * 0.62 && x < w * 0.72 && y > h * 0.1 && y < h * 0.85) img.at(x, y) = 10;
    }
  return img;
}

/// Smooth field with strong, generically oriented gradients; no steps align
/// to the pixel grid, so suppression ties are incidental rather than
/// systematic.
inline RasterImage wavy_texture(int w, int h) {
  RasterImage img(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = 128.0 + 100.0 * std::sin(0.55 * x + 0.3 * y + 1.7 * std::sin(0.11 * y));
      img.at(x, y) = tilekit::round_clamp_u8(v);
    }
  return img;
}

inline RasterImage noise_gray(int w, int h, std::uint64_t seed) {
  tilekit::Rng rng(seed);
  RasterImage img(w, h, 1);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.uniform_int(256));
  return img;
}

inline EdgeMap random_map(int w, int h, double density, std::uint64_t seed) {
  tilekit::Rng rng(seed);
  EdgeMap map(w, h);
  for (auto& v : map.data) v = rng.uniform01() < density ? 255 : 0;
  return map;
}

/// Square fractal raster: recursively keep 8 of 9 subcells, depth levels,
/// over a side-3^order grid. The construction is the analytic oracle: its
/// dimension is log 8 / log 3.
inline EdgeMap sierpinski_carpet(int order, int depth) {
  int side = 1;
  for (int i = 0; i < order; ++i) side *= 3;
  EdgeMap map(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      bool kept = true;
      int cell = side;
      for (int level = 0; level < depth && kept; ++level) {
        cell /= 3;
        if ((y / cell) % 3 == 1 && (x / cell) % 3 == 1) kept = false;
      }
      map.set(x, y, kept);
    }
  }
  return map;
}

inline double psnr(const RasterImage& a, const RasterImage& b) {
  double mse = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = static_cast<double>(a.data()[i]) - b.data()[i];
    mse += d * d;
  }
  mse /= static_cast<double>(a.data().size());
  if (mse == 0.0) return 1e9;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

/// Unique scratch directory under the system temp root, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("tilekit_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace tkfix
