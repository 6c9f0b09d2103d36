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
#include "tilekit/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tilekit {

EdgeMap binarize(const RasterImage& gray, Threshold threshold) {
  if (gray.channels() != 1) throw InvalidArgument("binarize expects a 1-channel image");
  double th = threshold.value;
  if (threshold.mode == Threshold::Mode::kMean) {
    const double sum = std::accumulate(gray.data().begin(), gray.data().end(), 0.0);
    th = sum / static_cast<double>(gray.data().size());
  }
  EdgeMap out(gray.width(), gray.height());
  for (std::size_t i = 0; i < gray.data().size(); ++i)
    out.data[i] = gray.data()[i] > th ? 255 : 0;
  return out;
}

BoxCountSeries box_count(const EdgeMap& map, std::span<const int> sizes) {
  if (sizes.empty()) throw InvalidArgument("box size list is empty");
  const int min_dim = std::min(map.width, map.height);
  BoxCountSeries series;
  series.entries.reserve(sizes.size());
  for (int s : sizes) {
    if (s < 1 || s > min_dim) throw InvalidArgument("box size out of range");
    long long count = 0;
    for (int by = 0; by < map.height; by += s) {
      for (int bx = 0; bx < map.width; bx += s) {
        const int ye = std::min(by + s, map.height);
        const int xe = std::min(bx + s, map.width);
        bool occupied = false;
        for (int y = by; y < ye && !occupied; ++y)
          for (int x = bx; x < xe; ++x)
            if (map.at(x, y)) {
              occupied = true;
              break;
            }
        if (occupied) ++count;
      }
    }
    series.entries.push_back({s, count});
  }
  return series;
}

std::vector<int> box_size_schedule(int min_dim) {
  std::vector<int> sizes;
  int p = 1;
  while (p * 2 <= min_dim / 2) p *= 2;
  for (int s = p; s >= 2; s /= 2) sizes.push_back(s);
  if (sizes.size() < 2) {
    // Narrow maps: fall back to the two smallest sides that still fit.
    sizes.clear();
    if (min_dim >= 2) sizes.push_back(2);
    sizes.push_back(1);
  }
  return sizes;
}

FdResult fractal_dimension(const EdgeMap& map) {
  if (map.occupied_count() == 0) throw InvalidArgument("empty set has no dimension");
  const int min_dim = std::min(map.width, map.height);
  const std::vector<int> sizes = box_size_schedule(min_dim);
  if (sizes.size() < 2) throw InvalidArgument("map too small for a box-count regression");

  FdResult result;
  result.series = box_count(map, sizes);

  // Least squares of y = ln N(s) on x = ln(1/s). N(s) >= 1 for every size
  // because the map is nonempty.
  const std::size_t n = result.series.entries.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& e : result.series.entries) {
    const double x = std::log(1.0 / e.size);
    const double y = std::log(static_cast<double>(e.count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double denom = n * sxx - sx * sx;
  double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;

  const double ss_tot = syy - sy * sy / n;
  if (ss_tot <= 0.0) {
    result.r_squared = 1.0;  // constant series: the fit is exact
  } else {
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0.0;
    for (const auto& e : result.series.entries) {
      const double x = std::log(1.0 / e.size);
      const double y = std::log(static_cast<double>(e.count));
      const double r = y - (slope * x + intercept);
      ss_res += r * r;
    }
    result.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  }
  result.dimension = std::clamp(slope, 0.0, 2.0);
  return result;
}

}  // namespace tilekit
