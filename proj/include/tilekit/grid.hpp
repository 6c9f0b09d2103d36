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
#include <cstddef>
#include <vector>

#include "tilekit/error.hpp"

namespace tilekit {

/// Dense 2-D grid of doubles with channels, row-major, channel-interleaved.
/// Admits only finite values: NaN/Inf are rejected on construction and the
/// arithmetic helpers never produce them from finite inputs.
class FeatureGrid {
 public:
  FeatureGrid() = default;
  FeatureGrid(int width, int height, int channels, double fill = 0.0)
      : width_(width), height_(height), channels_(channels) {
    if (width < 1 || height < 1 || channels < 1)
      throw InvalidArgument("grid dimensions must be positive");
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
    check_finite(fill);
  }
  FeatureGrid(int width, int height, int channels, std::vector<double> data)
      : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (width < 1 || height < 1 || channels < 1)
      throw InvalidArgument("grid dimensions must be positive");
    if (data_.size() != static_cast<std::size_t>(width) * height * channels)
      throw InvalidArgument("grid data length mismatch");
    for (double v : data_) check_finite(v);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }

  double at(int x, int y, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  double& at(int x, int y, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_shape(const FeatureGrid& o) const {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }

 private:
  static void check_finite(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("grid admits finite values only");
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<double> data_;
};

}  // namespace tilekit
