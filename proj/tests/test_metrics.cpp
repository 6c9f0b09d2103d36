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

#include <cmath>

#include "fixtures.hpp"
#include "tilekit/edges.hpp"
#include "tilekit/fractal.hpp"
#include "tilekit/image_io.hpp"
#include "tilekit/metrics.hpp"

using namespace tilekit;

TEST_CASE("ssim of an image with itself is 1") {
  const auto img = to_grayscale(tkfix::textured_rgb(48, 48, 3));
  CHECK(std::abs(ssim(img, img) - 1.0) < 1e-9);
}

TEST_CASE("ssim is symmetric to 1e-12") {
  const auto a = to_grayscale(tkfix::textured_rgb(40, 40, 4));
  const auto b = gaussian_blur(a, 1.0);
  CHECK(std::abs(ssim(a, b) - ssim(b, a)) < 1e-12);
}

TEST_CASE("ssim of the inverted checker is negative") {
  const auto img = tkfix::checkerboard(48, 48, 8);
  RasterImage inverted(48, 48, 1);
  for (std::size_t i = 0; i < img.data().size(); ++i)
    inverted.data()[i] = static_cast<std::uint8_t>(255 - img.data()[i]);
  CHECK(ssim(img, inverted) < 0.0);
}

TEST_CASE("ssim stays within [-1, 1] on assorted pairs") {
  const auto a = to_grayscale(tkfix::textured_rgb(32, 32, 5));
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto b = tkfix::noise_gray(32, 32, seed);
    const double v = ssim(a, b);
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("ssim decreases monotonically with blur strength") {
  const auto img = tkfix::checkerboard(64, 64, 4, 40, 210);
  const double s_half = ssim(img, gaussian_blur(img, 0.5));
  const double s_one = ssim(img, gaussian_blur(img, 1.0));
  const double s_two = ssim(img, gaussian_blur(img, 2.0));
  CHECK(s_half < 1.0);
  CHECK(s_one < s_half);
  CHECK(s_two < s_one);
}

TEST_CASE("ssim guards: size mismatch, tiny images, channel count") {
  const auto a = tkfix::constant(16, 16, 10);
  CHECK_THROWS_AS(ssim(a, tkfix::constant(16, 17, 10)), InvalidArgument);
  CHECK_THROWS_AS(ssim(tkfix::constant(10, 10, 0), tkfix::constant(10, 10, 0)),
                  InvalidArgument);
  CHECK_THROWS_AS(ssim(tkfix::constant(16, 16, 0, 3), tkfix::constant(16, 16, 0, 3)),
                  InvalidArgument);
}

TEST_CASE("fd report: square-fractal fixture lands on the analytic value") {
  tkfix::TempDir tmp("fdrep");
  const auto carpet = tkfix::sierpinski_carpet(6, 5);
  save_image(RasterImage(carpet.width, carpet.height, 1, carpet.data), tmp.path() / "carpet.png");
  const auto report = fd_report(tmp.path(), true);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].name == "carpet.png");
  const double analytic = std::log(8.0) / std::log(3.0);
  CHECK(std::abs(report.rows[0].fd_original - analytic) < 0.05);
  CHECK(report.rows[0].fd_original >= 0.0);
  CHECK(report.rows[0].fd_original <= 2.0);
  CHECK(report.rows[0].fd_preprocessed >= 0.0);
  CHECK(report.rows[0].fd_preprocessed <= 2.0);
}

TEST_CASE("fd report: empty directory gives an empty report") {
  tkfix::TempDir tmp("fdrep_empty");
  const auto report = fd_report(tmp.path(), true);
  CHECK(report.rows.empty());
}

TEST_CASE("fd report values match direct module calls") {
  tkfix::TempDir tmp("fdrep_fold");
  const auto img = tkfix::detailed_scene(128, 128);
  save_image(img, tmp.path() / "t.png");
  const auto report = fd_report(tmp.path(), true);
  REQUIRE(report.rows.size() == 1);
  const double direct_o = fractal_dimension(binarize(img, Threshold::mean())).dimension;
  const double direct_p = fractal_dimension(canny(gaussian_blur(img, 1.0), 50, 150)).dimension;
  CHECK(report.rows[0].fd_original == direct_o);
  CHECK(report.rows[0].fd_preprocessed == direct_p);
}

TEST_CASE("fd report without the denoising pass still fills both columns") {
  tkfix::TempDir tmp("fdrep_nopre");
  const auto img = tkfix::detailed_scene(96, 96);
  save_image(img, tmp.path() / "t.png");
  const auto report = fd_report(tmp.path(), false);
  REQUIRE(report.rows.size() == 1);
  const double direct_p = fractal_dimension(canny(img, 50, 150)).dimension;
  CHECK(report.rows[0].fd_preprocessed == direct_p);
}

TEST_CASE("fd report: unreadable file becomes a warning, not a failure") {
  tkfix::TempDir tmp("fdrep_warn");
  save_image(to_grayscale(tkfix::textured_rgb(64, 64, 2)), tmp.path() / "good.png");
  write_text_atomic("not an image", tmp.path() / "bad.png");
  const auto report = fd_report(tmp.path(), true);
  CHECK(report.rows.size() == 1);
  REQUIRE(report.warnings.size() >= 1);
  CHECK(report.warnings[0].find("bad.png") != std::string::npos);
}

TEST_CASE("csv rendering matches the column shape") {
  FdReport report;
  report.rows.push_back({"x.png", 1.5, 1.75});
  const std::string csv = fd_report_csv(report);
  CHECK(csv.find("name,fd_o,fd_p\n") == 0);
  CHECK(csv.find("x.png,1.5000,1.7500\n") != std::string::npos);
}
