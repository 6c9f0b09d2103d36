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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tilekit/image.hpp"

namespace tilekit {

/// A tile together with the rectangles of its two figures. The rects must
/// lie inside the tile and must not overlap.
struct TileFigures {
  RasterImage tile;
  Rect figure_a;
  Rect figure_b;

  /// Default figure extraction when no rects are supplied: split at the
  /// vertical midline, A = left half, B = right half.
  static TileFigures midline_split(RasterImage tile);

  void validate() const;
};

/// The eight two-figure compositions; a prime marks a horizontal flip.
enum class Composition : int {
  kAB, kABf, kAfB, kAfBf, kBA, kBAf, kBfA, kBfAf,
};
inline constexpr std::array<Composition, 8> kAllCompositions = {
    Composition::kAB,  Composition::kABf, Composition::kAfB, Composition::kAfBf,
    Composition::kBA,  Composition::kBAf, Composition::kBfA, Composition::kBfAf,
};
const char* composition_name(Composition c);  // "AB", "AB'", ...

/// Seam smoothing mode for composition junctions.
struct BlurSpec {
  enum class Kind { kGaussian, kMotion };
  Kind kind = Kind::kGaussian;
  double sigma = 2.0;        // gaussian
  double length = 9.0;       // motion
  double angle_deg = 0.0;    // motion

  static BlurSpec gaussian(double sigma) { return {Kind::kGaussian, sigma, 0, 0}; }
  static BlurSpec motion(double length, double angle_deg) {
    return {Kind::kMotion, 0, length, angle_deg};
  }
};

/// Fixed 3x3 color transform used to equalize color statistics across tiles:
/// R' = 0.393R + 0.769G + 0.189B, G' = 0.349R + 0.686G + 0.168B,
/// B' = 0.272R + 0.534G + 0.131B, rounded and clamped per channel.
RasterImage sepia(const RasterImage& img);

/// Brightness restoration after the sepia transform. The sepia matrix is
/// numerically rank one (its second singular value is three orders of
/// magnitude below the first, under the quantization noise of 8-bit data),
/// so the least-squares pseudo-inverse is taken on the intensity axis: the
/// pre-transform brightness is recovered exactly and replicated per channel.
RasterImage inverse_sepia(const RasterImage& img);

/// Pixelwise mean: out = round((a + b) / 2) per channel. Shapes must match.
RasterImage average_blend(const RasterImage& a, const RasterImage& b);

/// Euclidean distance between rect centers.
double center_distance(const Rect& a, const Rect& b);

/// Median filter over a ksize x ksize neighborhood (odd ksize >= 3),
/// borders replicated.
RasterImage median_blur(const RasterImage& img, int ksize);

/// Re-compute only the samples inside the seam strip with the chosen blur;
/// everything outside the strip is byte-identical to the input. A zero-area
/// seam is a no-op.
RasterImage seam_blur(const RasterImage& img, const Rect& seam, const BlurSpec& mode);

/// All eight flip compositions of the tile's two figures, placed at the
/// tile's own figure geometry with the junction strip smoothed. seam_width 0
/// copies the figures verbatim.
std::vector<RasterImage> intra_mosaicslice(const TileFigures& t, int seam_width,
                                           const BlurSpec& mode = BlurSpec::gaussian(2.0));

struct InterResult {
  RasterImage image;
  /// Realized figure-center distance: the median of the two sources'
  /// center distances.
  double center_offset = 0.0;
  std::vector<std::string> warnings;
};

/// Cross-tile figure blending: color-normalize both tiles with the sepia
/// transform, shift the partner so its figure-center distance meets the
/// median of the two sources (the seed resolves fractional placement),
/// average the pixels, restore brightness, then refine the junction
/// (median filter along the placement boundary, genuine edges kept crisp
/// by edge detection) when the junction shows a seam the sources do not.
/// A corner-response check along the boundary attaches a warning when the
/// strongest corner sits far from the placement line.
InterResult inter_mosaicslice(const TileFigures& a, const TileFigures& b,
                              std::uint64_t seed);

}  // namespace tilekit
