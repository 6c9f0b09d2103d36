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
#include <string_view>
#include <utility>
#include <vector>

#include "tilekit/image.hpp"

namespace tilekit {

enum class RegionClass { kNoTile = 0, kTile = 1 };

/// Classed bounding box in normalized coordinates: box center (cx, cy) and
/// size (w, h), all relative to the image, box fully inside [0,1]^2.
struct RegionAnnotation {
  RegionClass cls = RegionClass::kNoTile;
  double cx = 0, cy = 0, w = 0, h = 0;
};

/// Parse annotation text: one region per nonempty line, `class cx cy w h`,
/// class 0 = no_tile, 1 = tile. Malformed lines and boxes escaping the unit
/// square raise errors carrying the 1-based line number. Line order is
/// preserved.
std::vector<RegionAnnotation> load_annotations(std::string_view text, int img_w, int img_h);

/// Denormalize to pixels. Edges are rounded independently so adjacent
/// annotations stay adjacent; the result is clipped to the image and kept
/// at least one pixel in each direction.
Rect annotation_rect(const RegionAnnotation& ann, int img_w, int img_h);

/// Replacement candidates keyed by a stable id (the file name when loaded
/// from a directory, scanned in name order).
struct CandidatePool {
  struct Entry {
    std::string id;
    RasterImage image;
  };
  std::vector<Entry> tiles;

  static CandidatePool from_directory(const std::filesystem::path& dir);
};

/// Classical upscale by an integer factor (bicubic); factor 1 is identity.
RasterImage upscale_tile(const RasterImage& t, int alpha);

struct CompatWeights {
  double histogram = 0.5;  // chi^2 between border and surround histograms
  double seam = 0.3;       // mean gradient across the region boundary after trial paste
  double structure = 0.2;  // 1 - mean structural similarity around the region
};

/// Score how well a candidate fits a wall region; lower is better, always
/// >= 0. The candidate is trial-resized to the region; its border strip is
/// compared against the 8-pixel ring around the region (histogram chi^2 with
/// 32 bins per channel), the boundary gradient after a trial paste is
/// averaged, and the structural term compares the region surroundings before
/// and after the paste. A region flush with the wall border truncates the
/// ring instead of failing.
double compatibility(const RasterImage& candidate, const RasterImage& wall,
                     const Rect& region, const CompatWeights& weights = {});

/// The pool entry minimizing compatibility; ties resolve to the
/// lexicographically smallest id.
std::pair<std::string, double> select_tile(const CandidatePool& pool,
                                           const RasterImage& wall, const Rect& region,
                                           const CompatWeights& weights = {});

/// Paste a region-sized tile with a linear alpha ramp over `margin` pixels
/// inside the region edge. Pixels outside the region are byte-identical to
/// the wall; margin 0 is a hard paste.
RasterImage feather_blend(const RasterImage& wall, const RasterImage& tile,
                          const Rect& region, int margin);

struct FillConfig {
  int margin = 6;
  CompatWeights weights;
};

struct PlacementResult {
  RegionAnnotation region;
  std::string chosen_id;
  double objective = 0.0;
  RasterImage composited;  // region crop of the running composite
  double elapsed_ms = 0.0;
};

/// Fill every no_tile region in file order: select the best candidate,
/// resize it to the region (bicubic), feather it in. Tile-classed regions
/// and all pixels outside no_tile regions are untouched.
std::pair<RasterImage, std::vector<PlacementResult>> fill_all(
    const RasterImage& wall, const std::vector<RegionAnnotation>& annotations,
    const CandidatePool& pool, const FillConfig& cfg = {});

}  // namespace tilekit
