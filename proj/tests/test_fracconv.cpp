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
#include <doctest.h>

#include <chrono>
#include <numeric>

#include "fixtures.hpp"
#include "tilekit/fracconv.hpp"

using namespace tilekit;

namespace {

/// Left half fine 4px checker, right half constant.
RasterImage composite_fixture(int side) {
  RasterImage img(side, side, 1);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x)
      img.at(x, y) = x < side / 2 ? (((x / 4 + y / 4) % 2 == 0) ? 0 : 255) : 128;
  return img;
}

double half_mean(const RichnessMask& mask, bool left) {
  double sum = 0.0;
  long long n = 0;
  const int x0 = left ? 0 : mask.width / 2;
  const int x1 = left ? mask.width / 2 : mask.width;
  for (int y = 0; y < mask.height; ++y)
    for (int x = x0; x < x1; ++x) {
      sum += mask.at(x, y);
      ++n;
    }
  return sum / static_cast<double>(n);
}

}  // namespace

TEST_CASE("scale_fd mapping") {
  CHECK(scale_fd(2.0) == 255);  // 2 * 127 = 254, + 1
  CHECK(scale_fd(0.0) == 1);
  CHECK(scale_fd(-0.3) == 0);
  CHECK(scale_fd(1.0) == 128);
  CHECK(scale_fd(0.5) == 65);  // round(63.5) away from zero = 64, + 1
}

TEST_CASE("constant image: every written center holds 1") {
  const auto img = tkfix::constant(64, 64, 90);
  FcParams params;
  const auto mask = fractal_convolution(img, params);
  REQUIRE(mask.width == 64);
  REQUIRE(mask.height == 64);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      const bool written = x >= 4 && x <= 60 && y >= 4 && y <= 60;
      CHECK(mask.at(x, y) == (written ? 1 : 0));
    }
}

TEST_CASE("mask dimensions equal input dimensions") {
  const auto img = tkfix::checkerboard(40, 28, 4);
  const auto mask = fractal_convolution(img, FcParams{});
  CHECK(mask.width == 40);
  CHECK(mask.height == 28);
}

TEST_CASE("stride-1 coverage: exactly (W-7) x (H-7) centers written") {
  const auto img = tkfix::checkerboard(32, 24, 4);
  std::vector<FdSample> samples;
  const auto mask = fractal_convolution(img, FcParams{}, &samples);
  CHECK(samples.size() == static_cast<std::size_t>((32 - 7) * (24 - 7)));
  // distinct centers: count of nonzero-capable positions matches sample count
  std::size_t written = 0;
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (x >= 4 && x <= 32 - 4 && y >= 4 && y <= 24 - 4) ++written;
  CHECK(samples.size() == written);
}

TEST_CASE("textured half scores strictly higher than the flat half") {
  const auto img = composite_fixture(128);
  const auto mask = fractal_convolution(img, FcParams{});
  CHECK(half_mean(mask, true) > half_mean(mask, false));
}

TEST_CASE("patch larger than the image is rejected") {
  const auto img = tkfix::constant(8, 8, 0);
  FcParams params;
  params.patch = 16;
  CHECK_THROWS_AS(fractal_convolution(img, params), InvalidArgument);
  params.patch = 0;
  CHECK_THROWS_AS(fractal_convolution(img, params), InvalidArgument);
}

TEST_CASE("mask bytes identical across 1, 2, and 4 worker threads") {
  const auto img = to_grayscale(tkfix::textured_rgb(96, 80, 3));
  FcParams params;
  params.threads = 1;
  const auto one = fractal_convolution(img, params);
  params.threads = 2;
  const auto two = fractal_convolution(img, params);
  params.threads = 4;
  const auto four = fractal_convolution(img, params);
  CHECK(one == two);
  CHECK(one == four);
}

TEST_CASE("global-canny variant stays on the mask contract") {
  const auto img = composite_fixture(96);
  FcParams params;
  params.global_canny = true;
  const auto mask = fractal_convolution(img, params);
  CHECK(mask.width == 96);
  CHECK(half_mean(mask, true) > half_mean(mask, false));
}

TEST_CASE("stride tiles the scan sparsely") {
  const auto img = tkfix::checkerboard(33, 33, 4);
  FcParams params;
  params.stride = 4;
  std::vector<FdSample> samples;
  fractal_convolution(img, params, &samples);
  // positions: floor((33-8)/4)+1 = 7 per axis
  CHECK(samples.size() == 49);
  for (const auto& s : samples) {
    CHECK((s.cx - 4) % 4 == 0);
    CHECK((s.cy - 4) % 4 == 0);
  }
}

TEST_CASE("segment scaled and binary modes") {
  const auto img = tkfix::constant(6, 6, 200, 3);
  RichnessMask mask(6, 6);

  SUBCASE("full mask passes the image through") {
    for (auto& v : mask.data) v = 255;
    CHECK(segment(img, mask, SegmentMode::kScaled) == img);
  }
  SUBCASE("zero mask blacks out") {
    const auto out = segment(img, mask, SegmentMode::kScaled);
    for (auto v : out.data()) CHECK(v == 0);
  }
  SUBCASE("binary threshold kills 127 and passes 129") {
    for (int y = 0; y < 6; ++y)
      for (int x = 0; x < 6; ++x)
        mask.data[static_cast<std::size_t>(y) * 6 + x] = (x + y) % 2 == 0 ? 127 : 129;
    const auto out = segment(img, mask, SegmentMode::kBinary, 128);
    for (int y = 0; y < 6; ++y)
      for (int x = 0; x < 6; ++x)
        CHECK(out.at(x, y, 1) == ((x + y) % 2 == 0 ? 0 : 200));
  }
  SUBCASE("scaled mode rounds the product") {
    for (auto& v : mask.data) v = 128;
    const auto out = segment(img, mask, SegmentMode::kScaled);
    CHECK(out.at(0, 0, 0) == 100);  // 200 * 128/255 = 100.39
  }
}

TEST_CASE("segment rejects mismatched mask") {
  const auto img = tkfix::constant(8, 8, 10);
  RichnessMask mask(4, 4);
  CHECK_THROWS_AS(segment(img, mask, SegmentMode::kScaled), InvalidArgument);
}

TEST_CASE("512x512 composite under the single-thread budget, halves differ by >= 50") {
  const auto img = composite_fixture(512);
  FcParams params;
  params.threads = 1;
  const auto start = std::chrono::steady_clock::now();
  const auto mask = fractal_convolution(img, params);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs <= 30.0);
  CHECK(half_mean(mask, true) - half_mean(mask, false) >= 50.0);
}
