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

#include <filesystem>
#include <string>
#include <vector>

#include "tilekit/image.hpp"

namespace tilekit {

/// Mean local structural similarity of two equal-size grayscale images,
/// 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03, L = 255,
/// averaged over window positions fully inside both images. Result lies in
/// [-1, 1]; identical images score exactly 1.
double ssim(const RasterImage& a, const RasterImage& b);

struct FdReportRow {
  std::string name;
  double fd_original = 0.0;      // dimension of the mean-thresholded grayscale
  double fd_preprocessed = 0.0;  // dimension of the edge map (Canny 50/150)
};

struct FdReport {
  std::vector<FdReportRow> rows;
  std::vector<std::string> warnings;  // unreadable files, empty point sets
};

/// Per-image dimension report over a directory (PNG/JPEG, name order).
/// `preprocess` adds a sigma-1 denoising blur before edge detection for the
/// preprocessed column. Unreadable files become warnings, not failures; an
/// image with no occupied pixels reports dimension 0 with a warning.
FdReport fd_report(const std::filesystem::path& dir, bool preprocess = true);

/// CSV with header `name,fd_o,fd_p`.
std::string fd_report_csv(const FdReport& report);

}  // namespace tilekit
