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
#include "tilekit/mosaic.hpp"

#include <algorithm>
#include <cmath>

#include "tilekit/edges.hpp"
#include "tilekit/rng.hpp"

namespace tilekit {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Sepia transform rows and their action on the gray axis.
constexpr double kSepia[3][3] = {
    {0.393, 0.769, 0.189},
    {0.349, 0.686, 0.168},
    {0.272, 0.534, 0.131},
};
constexpr double kGrayGain[3] = {1.351, 1.203, 0.937};  // row sums = sepia of (1,1,1)
constexpr double kGrayGainSq =
    kGrayGain[0] * kGrayGain[0] + kGrayGain[1] * kGrayGain[1] + kGrayGain[2] * kGrayGain[2];

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

Rect scale_rect(const Rect& r, double sx, double sy) {
  Rect out;
  out.x = static_cast<int>(round_away(r.x * sx));
  out.y = static_cast<int>(round_away(r.y * sy));
  out.w = std::max(1, static_cast<int>(round_away(r.w * sx)));
  out.h = std::max(1, static_cast<int>(round_away(r.h * sy)));
  return out;
}

/// Shift image content by (dx, dy); samples pulled past the border replicate.
RasterImage translate(const RasterImage& img, int dx, int dy) {
  if (dx == 0 && dy == 0) return img;
  RasterImage out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c)
        out.at(x, y, c) = img.at_clamped(x - dx, y - dy, c);
  return out;
}

/// Median of two values; with an even count the two middles are averaged,
/// except when they tie (the mode), in which case that value is returned.
double median2(double a, double b) {
  if (a == b) return a;
  return (a + b) / 2.0;
}

void paste(RasterImage& dst, const RasterImage& src, int x0, int y0) {
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x)
      for (int c = 0; c < src.channels(); ++c)
        dst.at(x0 + x, y0 + y, c) = src.at(x, y, c);
}

/// Harris corner response of a grayscale image (k = 0.04, tensor smoothing
/// sigma 1).
FeatureGrid harris_response(const RasterImage& gray) {
  auto [gx, gy] = sobel(gray);
  const int w = gray.width(), h = gray.height();
  FeatureGrid products(w, h, 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double ix = gx.at(x, y), iy = gy.at(x, y);
      products.at(x, y, 0) = ix * ix;
      products.at(x, y, 1) = iy * iy;
      products.at(x, y, 2) = ix * iy;
    }
  }
  const FeatureGrid smoothed = gaussian_blur_grid(products, 1.0);
  FeatureGrid response(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double xx = smoothed.at(x, y, 0);
      const double yy = smoothed.at(x, y, 1);
      const double xy = smoothed.at(x, y, 2);
      const double det = xx * yy - xy * xy;
      const double tr = xx + yy;
      response.at(x, y) = det - 0.04 * tr * tr;
    }
  }
  return response;
}

/// Largest per-channel step across the vertical line x = bx (or horizontal
/// line y = by when vertical == false) within the given span.
double cross_line_step(const RasterImage& img, bool vertical, int line, int span_lo,
                       int span_hi) {
  double worst = 0.0;
  if (vertical) {
    if (line <= 0 || line >= img.width()) return 0.0;
    for (int y = span_lo; y <= span_hi; ++y) {
      for (int c = 0; c < img.channels(); ++c) {
        const double d = std::abs(static_cast<double>(img.at(line, y, c)) -
                                  static_cast<double>(img.at(line - 1, y, c)));
        worst = std::max(worst, d);
      }
    }
  } else {
    if (line <= 0 || line >= img.height()) return 0.0;
    for (int x = span_lo; x <= span_hi; ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        const double d = std::abs(static_cast<double>(img.at(x, line, c)) -
                                  static_cast<double>(img.at(x, line - 1, c)));
        worst = std::max(worst, d);
      }
    }
  }
  return worst;
}

}  // namespace

TileFigures TileFigures::midline_split(RasterImage tile) {
  if (tile.width() < 2) throw InvalidArgument("tile too narrow to split into two figures");
  const int half = tile.width() / 2;
  TileFigures t;
  t.figure_a = Rect{0, 0, half, tile.height()};
  t.figure_b = Rect{half, 0, tile.width() - half, tile.height()};
  t.tile = std::move(tile);
  return t;
}

void TileFigures::validate() const {
  const Rect bounds{0, 0, tile.width(), tile.height()};
  for (const Rect* r : {&figure_a, &figure_b}) {
    if (r->w < 1 || r->h < 1) throw InvalidArgument("figure rect is empty");
    if (r->x < 0 || r->y < 0 || r->right() > bounds.w || r->bottom() > bounds.h)
      throw InvalidArgument("figure rect outside tile");
  }
  if (figure_a.overlaps(figure_b)) throw InvalidArgument("figure rects overlap");
}

const char* composition_name(Composition c) {
  switch (c) {
    case Composition::kAB: return "AB";
    case Composition::kABf: return "AB'";
    case Composition::kAfB: return "A'B";
    case Composition::kAfBf: return "A'B'";
    case Composition::kBA: return "BA";
    case Composition::kBAf: return "BA'";
    case Composition::kBfA: return "B'A";
    case Composition::kBfAf: return "B'A'";
  }
  return "?";
}

RasterImage sepia(const RasterImage& img) {
  if (img.channels() != 3) throw InvalidArgument("sepia requires color");
  RasterImage out(img.width(), img.height(), 3);
  const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = img.data()[3 * i];
    const double g = img.data()[3 * i + 1];
    const double b = img.data()[3 * i + 2];
    for (int c = 0; c < 3; ++c) {
      out.data()[3 * i + c] =
          round_clamp_u8(kSepia[c][0] * r + kSepia[c][1] * g + kSepia[c][2] * b);
    }
  }
  return out;
}

RasterImage inverse_sepia(const RasterImage& img) {
  if (img.channels() != 3) throw InvalidArgument("inverse sepia requires color");
  RasterImage out(img.width(), img.height(), 3);
  const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
  for (std::size_t i = 0; i < n; ++i) {
    const double est = (kGrayGain[0] * img.data()[3 * i] +
                        kGrayGain[1] * img.data()[3 * i + 1] +
                        kGrayGain[2] * img.data()[3 * i + 2]) /
                       kGrayGainSq;
    const std::uint8_t v = round_clamp_u8(est);
    out.data()[3 * i] = v;
    out.data()[3 * i + 1] = v;
    out.data()[3 * i + 2] = v;
  }
  return out;
}

RasterImage average_blend(const RasterImage& a, const RasterImage& b) {
  if (!a.same_shape(b)) throw InvalidArgument("blend shape mismatch");
  RasterImage out(a.width(), a.height(), a.channels());
  for (std::size_t i = 0; i < a.data().size(); ++i)
    out.data()[i] = round_clamp_u8((static_cast<double>(a.data()[i]) + b.data()[i]) / 2.0);
  return out;
}

double center_distance(const Rect& a, const Rect& b) {
  const double dx = a.center_x() - b.center_x();
  const double dy = a.center_y() - b.center_y();
  return std::sqrt(dx * dx + dy * dy);
}

RasterImage median_blur(const RasterImage& img, int ksize) {
  if (ksize < 3 || ksize % 2 == 0) throw InvalidArgument("median kernel must be odd and >= 3");
  const int r = ksize / 2;
  RasterImage out(img.width(), img.height(), img.channels());
  std::vector<std::uint8_t> window;
  window.reserve(static_cast<std::size_t>(ksize) * ksize);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        window.clear();
        for (int dy = -r; dy <= r; ++dy)
          for (int dx = -r; dx <= r; ++dx)
            window.push_back(img.at_clamped(x + dx, y + dy, c));
        auto mid = window.begin() + window.size() / 2;
        std::nth_element(window.begin(), mid, window.end());
        out.at(x, y, c) = *mid;
      }
    }
  }
  return out;
}

RasterImage seam_blur(const RasterImage& img, const Rect& seam, const BlurSpec& mode) {
  if (seam.w == 0 || seam.h == 0) return img;
  if (seam.w < 0 || seam.h < 0 || seam.x < 0 || seam.y < 0 ||
      seam.right() > img.width() || seam.bottom() > img.height())
    throw InvalidArgument("seam outside image");

  RasterImage out = img;
  if (mode.kind == BlurSpec::Kind::kGaussian) {
    if (mode.sigma <= 0.0) throw InvalidArgument("invalid sigma");
    const int radius = static_cast<int>(std::ceil(3.0 * mode.sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
      kernel[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * mode.sigma * mode.sigma));
      sum += kernel[i + radius];
    }
    for (double& wv : kernel) wv /= sum;
    // Full 2-D window per strip pixel, reading the original image. The strip
    // is narrow, so the non-separable form costs little and keeps every read
    // on unmodified data.
    for (int y = seam.y; y < seam.bottom(); ++y) {
      for (int x = seam.x; x < seam.right(); ++x) {
        for (int c = 0; c < img.channels(); ++c) {
          double acc = 0.0;
          for (int dy = -radius; dy <= radius; ++dy) {
            double row = 0.0;
            for (int dx = -radius; dx <= radius; ++dx)
              row += kernel[dx + radius] * img.at_clamped(x + dx, y + dy, c);
            acc += kernel[dy + radius] * row;
          }
          out.at(x, y, c) = round_clamp_u8(acc);
        }
      }
    }
    return out;
  }

  // Motion blur: average along a line of the given length and angle.
  const int length = std::max(1, static_cast<int>(round_away(mode.length)));
  const double rad = mode.angle_deg * kPi / 180.0;
  const double ux = std::cos(rad), uy = std::sin(rad);
  for (int y = seam.y; y < seam.bottom(); ++y) {
    for (int x = seam.x; x < seam.right(); ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        double acc = 0.0;
        for (int k = 0; k < length; ++k) {
          const double t = k - (length - 1) / 2.0;
          const int sx = x + static_cast<int>(round_away(t * ux));
          const int sy = y + static_cast<int>(round_away(t * uy));
          acc += img.at_clamped(sx, sy, c);
        }
        out.at(x, y, c) = round_clamp_u8(acc / length);
      }
    }
  }
  return out;
}

std::vector<RasterImage> intra_mosaicslice(const TileFigures& t, int seam_width,
                                           const BlurSpec& mode) {
  t.validate();
  if (seam_width < 0) throw InvalidArgument("seam width must be nonnegative");

  const RasterImage content_a = crop(t.tile, t.figure_a);
  const RasterImage content_b = crop(t.tile, t.figure_b);

  // Junction strip between the two figure slots.
  Rect seam{0, 0, 0, 0};
  if (seam_width > 0) {
    const Rect &fa = t.figure_a, &fb = t.figure_b;
    if (fa.right() <= fb.x || fb.right() <= fa.x) {  // side by side
      const Rect& left = fa.right() <= fb.x ? fa : fb;
      const Rect& rightr = fa.right() <= fb.x ? fb : fa;
      const int bx = (left.right() + rightr.x) / 2;
      const int y0 = std::min(fa.y, fb.y);
      const int y1 = std::max(fa.bottom(), fb.bottom());
      seam = intersect(Rect{bx - seam_width / 2, y0, seam_width, y1 - y0},
                       Rect{0, 0, t.tile.width(), t.tile.height()});
    } else {  // stacked
      const Rect& top = fa.bottom() <= fb.y ? fa : fb;
      const Rect& bottom = fa.bottom() <= fb.y ? fb : fa;
      const int by = (top.bottom() + bottom.y) / 2;
      const int x0 = std::min(fa.x, fb.x);
      const int x1 = std::max(fa.right(), fb.right());
      seam = intersect(Rect{x0, by - seam_width / 2, x1 - x0, seam_width},
                       Rect{0, 0, t.tile.width(), t.tile.height()});
    }
  }

  std::vector<RasterImage> out;
  out.reserve(kAllCompositions.size());
  for (Composition code : kAllCompositions) {
    const int idx = static_cast<int>(code);
    const bool swap = idx >= 4;             // BA-family: contents trade slots
    const bool flip_first = (idx & 2) != 0; // prime on the first symbol
    const bool flip_second = (idx & 1) != 0;

    RasterImage first = swap ? content_b : content_a;
    RasterImage second = swap ? content_a : content_b;
    if (flip_first) first = hflip(first);
    if (flip_second) second = hflip(second);
    if (first.width() != t.figure_a.w || first.height() != t.figure_a.h)
      first = resize(first, t.figure_a.w, t.figure_a.h, ResizeMode::kBilinear);
    if (second.width() != t.figure_b.w || second.height() != t.figure_b.h)
      second = resize(second, t.figure_b.w, t.figure_b.h, ResizeMode::kBilinear);

    RasterImage composed = t.tile;
    paste(composed, first, t.figure_a.x, t.figure_a.y);
    paste(composed, second, t.figure_b.x, t.figure_b.y);
    if (seam.w > 0 && seam.h > 0) composed = seam_blur(composed, seam, mode);
    out.push_back(std::move(composed));
  }
  return out;
}

InterResult inter_mosaicslice(const TileFigures& a, const TileFigures& b,
                              std::uint64_t seed) {
  a.validate();
  b.validate();
  if (a.tile.channels() != 3 || b.tile.channels() != 3)
    throw InvalidArgument("channel mismatch: inter mixing requires 3-channel tiles");

  // Bring the partner to the host geometry.
  RasterImage b_img = b.tile;
  Rect b_fig_a = b.figure_a, b_fig_b = b.figure_b;
  if (b.tile.width() != a.tile.width() || b.tile.height() != a.tile.height()) {
    const double sx = static_cast<double>(a.tile.width()) / b.tile.width();
    const double sy = static_cast<double>(a.tile.height()) / b.tile.height();
    b_img = resize(b_img, a.tile.width(), a.tile.height(), ResizeMode::kBilinear);
    b_fig_a = scale_rect(b_fig_a, sx, sy);
    b_fig_b = scale_rect(b_fig_b, sx, sy);
  }

  const double dist_a = center_distance(a.figure_a, a.figure_b);
  const double dist_b = center_distance(b_fig_a, b_fig_b);
  const double target = median2(dist_a, dist_b);

  // Shift the partner so its figure spacing meets the target. The seed
  // resolves how the fractional shift rounds; an exact shift leaves nothing
  // for it to choose.
  double ux = b_fig_b.center_x() - b_fig_a.center_x();
  double uy = b_fig_b.center_y() - b_fig_a.center_y();
  const double norm = std::sqrt(ux * ux + uy * uy);
  if (norm > 0.0) {
    ux /= norm;
    uy /= norm;
  } else {
    ux = 1.0;
    uy = 0.0;
  }
  const double vx = (target - dist_b) * ux;
  const double vy = (target - dist_b) * uy;
  Rng rng(seed);
  auto pick = [&rng](double v) {
    const double lo = std::floor(v);
    if (lo == v) return static_cast<int>(lo);
    return static_cast<int>(lo) + (rng.uniform01() < v - lo ? 1 : 0);
  };
  const int jx = pick(vx);
  const int jy = pick(vy);

  const RasterImage norm_a = sepia(a.tile);
  const RasterImage norm_b = translate(sepia(b_img), jx, jy);
  const RasterImage blended = average_blend(norm_a, norm_b);
  RasterImage restored = inverse_sepia(blended);

  // Placement boundary: the line through the midpoint of the host's figure
  // centers, perpendicular to the center-to-center axis, considered within
  // the realized center distance of the midpoint.
  const double c1x = a.figure_a.center_x(), c1y = a.figure_a.center_y();
  const double c2x = a.figure_b.center_x(), c2y = a.figure_b.center_y();
  const double midx = (c1x + c2x) / 2.0, midy = (c1y + c2y) / 2.0;
  const bool vertical = std::abs(c2x - c1x) >= std::abs(c2y - c1y);
  const int line = static_cast<int>(round_away(vertical ? midx : midy));
  const int reach = std::max(1, static_cast<int>(round_away(target)));

  int span_lo, span_hi;
  Rect band;
  if (vertical) {
    span_lo = clampi(static_cast<int>(round_away(midy)) - reach, 0, restored.height() - 1);
    span_hi = clampi(static_cast<int>(round_away(midy)) + reach, 0, restored.height() - 1);
    band = intersect(Rect{line - 1, span_lo, 3, span_hi - span_lo + 1},
                     Rect{0, 0, restored.width(), restored.height()});
  } else {
    span_lo = clampi(static_cast<int>(round_away(midx)) - reach, 0, restored.width() - 1);
    span_hi = clampi(static_cast<int>(round_away(midx)) + reach, 0, restored.width() - 1);
    band = intersect(Rect{span_lo, line - 1, span_hi - span_lo + 1, 3},
                     Rect{0, 0, restored.width(), restored.height()});
  }

  // Refine only when the junction carries a step neither prepared source
  // shows; a self-pair blend is left untouched. Tiles too small for the
  // 3x3 filters skip refinement and the corner check.
  const bool filterable = restored.width() >= 3 && restored.height() >= 3;
  const double blend_step = cross_line_step(restored, vertical, line, span_lo, span_hi);
  const double ref_step =
      std::max(cross_line_step(inverse_sepia(norm_a), vertical, line, span_lo, span_hi),
               cross_line_step(inverse_sepia(norm_b), vertical, line, span_lo, span_hi));
  if (filterable && band.w > 0 && band.h > 0 && blend_step > ref_step + 8.0) {
    const RasterImage smoothed = median_blur(restored, 3);
    const EdgeMap edges = canny(to_grayscale(restored), 50.0, 150.0);
    for (int y = band.y; y < band.bottom(); ++y)
      for (int x = band.x; x < band.right(); ++x)
        if (!edges.at(x, y))
          for (int c = 0; c < 3; ++c) restored.at(x, y, c) = smoothed.at(x, y, c);
  }

  InterResult result;
  result.center_offset = target;

  // Post-check: the strongest corner response on the boundary should sit
  // near the placement line's midpoint. A miss is reported, never fatal.
  if (filterable && target > 0.0 && band.w > 0 && band.h > 0) {
    const FeatureGrid response = harris_response(to_grayscale(restored));
    double best = 0.0, bx = midx, by = midy;
    bool found = false;
    for (int y = band.y; y < band.bottom(); ++y) {
      for (int x = band.x; x < band.right(); ++x) {
        if (!found || response.at(x, y) > best) {
          best = response.at(x, y);
          bx = x;
          by = y;
          found = true;
        }
      }
    }
    if (found && best > 1e-6) {
      const double off = std::hypot(bx - midx, by - midy);
      if (off > 0.1 * target) {
        result.warnings.push_back("seam corner response at distance " + std::to_string(off) +
                                  " exceeds 10% of placement distance " +
                                  std::to_string(target));
      }
    }
  }

  result.image = std::move(restored);
  return result;
}

}  // namespace tilekit
