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
#include "tilekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tilekit/edges.hpp"
#include "tilekit/fractal.hpp"
#include "tilekit/image_io.hpp"

namespace tilekit {
namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

const std::vector<double>& ssim_window() {
  static const std::vector<double> window = [] {
    std::vector<double> w(static_cast<std::size_t>(kWindow) * kWindow);
    const int r = kWindow / 2;
    double sum = 0.0;
    for (int y = -r; y <= r; ++y) {
      for (int x = -r; x <= r; ++x) {
        const double v = std::exp(-(x * x + y * y) / (2.0 * kSigma * kSigma));
        w[(y + r) * kWindow + (x + r)] = v;
        sum += v;
      }
    }
    for (double& v : w) v /= sum;
    return w;
  }();
  return window;
}

}  // namespace

double ssim(const RasterImage& a, const RasterImage& b) {
  if (a.channels() != 1 || b.channels() != 1)
    throw InvalidArgument("ssim expects 1-channel images");
  if (a.width() != b.width() || a.height() != b.height())
    throw InvalidArgument("ssim size mismatch");
  if (a.width() < kWindow || a.height() < kWindow)
    throw InvalidArgument("ssim needs at least 11x11 images");

  const std::vector<double>& w = ssim_window();
  const int r = kWindow / 2;
  double total = 0.0;
  long long positions = 0;
  for (int cy = r; cy < a.height() - r; ++cy) {
    for (int cx = r; cx < a.width() - r; ++cx) {
      double mu_a = 0, mu_b = 0, aa = 0, bb = 0, ab = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const double wv = w[(dy + r) * kWindow + (dx + r)];
          const double va = a.at(cx + dx, cy + dy);
          const double vb = b.at(cx + dx, cy + dy);
          mu_a += wv * va;
          mu_b += wv * vb;
          aa += wv * va * va;
          bb += wv * vb * vb;
          ab += wv * va * vb;
        }
      }
      const double var_a = aa - mu_a * mu_a;
      const double var_b = bb - mu_b * mu_b;
      const double cov = ab - mu_a * mu_b;
      const double num = (2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2);
      const double den = (mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2);
      total += num / den;
      ++positions;
    }
  }
  return total / static_cast<double>(positions);
}

FdReport fd_report(const std::filesystem::path& dir, bool preprocess) {
  if (!std::filesystem::is_directory(dir))
    throw IoError("report directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  FdReport report;
  for (const auto& f : files) {
    RasterImage gray;
    try {
      gray = to_grayscale(load_image(f));
    } catch (const Error& e) {
      report.warnings.push_back(f.filename().string() + ": " + e.what());
      continue;
    }
    FdReportRow row;
    row.name = f.filename().string();
    auto measure = [&](const EdgeMap& map, const char* which) {
      if (map.occupied_count() == 0) {
        report.warnings.push_back(row.name + ": empty " + which + " point set, dimension 0");
        return 0.0;
      }
      return fractal_dimension(map).dimension;
    };
    row.fd_original = measure(binarize(gray, Threshold::mean()), "original");
    const RasterImage for_edges = preprocess ? gaussian_blur(gray, 1.0) : gray;
    row.fd_preprocessed = measure(canny(for_edges, 50.0, 150.0), "edge");
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string fd_report_csv(const FdReport& report) {
  std::ostringstream out;
  out << "name,fd_o,fd_p\n";
  out.setf(std::ios::fixed);
  out.precision(4);
  for (const auto& row : report.rows)
    out << row.name << ',' << row.fd_original << ',' << row.fd_preprocessed << '\n';
  return out.str();
}

}  // namespace tilekit
