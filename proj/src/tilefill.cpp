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
#include "tilekit/tilefill.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "tilekit/image_io.hpp"
#include "tilekit/metrics.hpp"

namespace tilekit {
namespace {

constexpr int kRingWidth = 8;
constexpr int kHistBins = 32;

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

/// Normalized per-channel histogram over a pixel set described by a
/// predicate rect walk. Bins stay all-zero when the set is empty.
struct Histogram {
  std::vector<double> bins;  // channels * kHistBins
  explicit Histogram(int channels) : bins(static_cast<std::size_t>(channels) * kHistBins, 0.0) {}

  void add(const RasterImage& img, int x, int y) {
    for (int c = 0; c < img.channels(); ++c)
      bins[static_cast<std::size_t>(c) * kHistBins + img.at(x, y, c) * kHistBins / 256] += 1.0;
  }
  void normalize(int channels) {
    for (int c = 0; c < channels; ++c) {
      double sum = 0.0;
      for (int b = 0; b < kHistBins; ++b) sum += bins[static_cast<std::size_t>(c) * kHistBins + b];
      if (sum > 0.0)
        for (int b = 0; b < kHistBins; ++b) bins[static_cast<std::size_t>(c) * kHistBins + b] /= sum;
    }
  }
};

double chi_squared(const Histogram& p, const Histogram& q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.bins.size(); ++i) {
    const double d = p.bins[i] - q.bins[i];
    acc += d * d / (p.bins[i] + q.bins[i] + 1e-9);
  }
  return acc;
}

void paste(RasterImage& dst, const RasterImage& src, int x0, int y0) {
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x)
      for (int c = 0; c < src.channels(); ++c)
        dst.at(x0 + x, y0 + y, c) = src.at(x, y, c);
}

RasterImage match_channels(const RasterImage& img, int channels) {
  if (img.channels() == channels) return img;
  return channels == 1 ? to_grayscale(img) : to_rgb(img);
}

/// Mean absolute per-channel step across the region boundary (4-neighbor
/// pairs, one pixel inside vs one outside). Sides flush with the wall border
/// contribute no pairs.
double seam_gradient(const RasterImage& img, const Rect& region) {
  double acc = 0.0;
  long long pairs = 0;
  const int ch = img.channels();
  auto add_pair = [&](int ix, int iy, int ox, int oy) {
    for (int c = 0; c < ch; ++c)
      acc += std::abs(static_cast<double>(img.at(ix, iy, c)) - img.at(ox, oy, c));
    pairs += ch;
  };
  for (int x = region.x; x < region.right(); ++x) {
    if (region.y > 0) add_pair(x, region.y, x, region.y - 1);
    if (region.bottom() < img.height()) add_pair(x, region.bottom() - 1, x, region.bottom());
  }
  for (int y = region.y; y < region.bottom(); ++y) {
    if (region.x > 0) add_pair(region.x, y, region.x - 1, y);
    if (region.right() < img.width()) add_pair(region.right() - 1, y, region.right(), y);
  }
  return pairs > 0 ? acc / static_cast<double>(pairs) : 0.0;
}

}  // namespace

std::vector<RegionAnnotation> load_annotations(std::string_view text, int img_w, int img_h) {
  if (img_w < 1 || img_h < 1) throw InvalidArgument("annotation image dimensions must be positive");
  std::vector<RegionAnnotation> out;
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    int cls;
    RegionAnnotation ann;
    std::string trailing;
    if (!(fields >> cls >> ann.cx >> ann.cy >> ann.w >> ann.h) || (fields >> trailing)) {
      throw InvalidArgument("annotation line " + std::to_string(line_no) +
                            ": expected `class cx cy w h`");
    }
    if (cls != 0 && cls != 1)
      throw InvalidArgument("annotation line " + std::to_string(line_no) +
                            ": class must be 0 (no_tile) or 1 (tile)");
    ann.cls = cls == 0 ? RegionClass::kNoTile : RegionClass::kTile;
    if (!(ann.w > 0.0) || !(ann.h > 0.0))
      throw InvalidArgument("annotation line " + std::to_string(line_no) +
                            ": box size must be positive");
    if (ann.cx - ann.w / 2 < 0.0 || ann.cx + ann.w / 2 > 1.0 || ann.cy - ann.h / 2 < 0.0 ||
        ann.cy + ann.h / 2 > 1.0)
      throw InvalidArgument("annotation line " + std::to_string(line_no) +
                            ": box escapes the unit square");
    out.push_back(ann);
  }
  return out;
}

Rect annotation_rect(const RegionAnnotation& ann, int img_w, int img_h) {
  int x0 = static_cast<int>(round_away((ann.cx - ann.w / 2) * img_w));
  int y0 = static_cast<int>(round_away((ann.cy - ann.h / 2) * img_h));
  int x1 = static_cast<int>(round_away((ann.cx + ann.w / 2) * img_w));
  int y1 = static_cast<int>(round_away((ann.cy + ann.h / 2) * img_h));
  x0 = clampi(x0, 0, img_w - 1);
  y0 = clampi(y0, 0, img_h - 1);
  x1 = clampi(x1, x0 + 1, img_w);
  y1 = clampi(y1, y0 + 1, img_h);
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

CandidatePool CandidatePool::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw IoError("candidate pool directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  CandidatePool pool;
  for (const auto& f : files) pool.tiles.push_back({f.filename().string(), load_image(f)});
  return pool;
}

RasterImage upscale_tile(const RasterImage& t, int alpha) {
  if (alpha < 1) throw InvalidArgument("upscale factor must be at least 1");
  if (alpha == 1) return t;
  return resize(t, t.width() * alpha, t.height() * alpha, ResizeMode::kBicubic);
}

double compatibility(const RasterImage& candidate, const RasterImage& wall,
                     const Rect& region, const CompatWeights& weights) {
  if (region.x < 0 || region.y < 0 || region.right() > wall.width() ||
      region.bottom() > wall.height() || region.w < 1 || region.h < 1)
    throw InvalidArgument("region outside wall");

  const RasterImage fitted =
      resize(match_channels(candidate, wall.channels()), region.w, region.h,
             ResizeMode::kBicubic);

  // Border strip of the fitted candidate vs the ring around the region.
  Histogram border(wall.channels()), ring(wall.channels());
  for (int y = 0; y < fitted.height(); ++y) {
    for (int x = 0; x < fitted.width(); ++x) {
      const int d = std::min(std::min(x, y),
                             std::min(fitted.width() - 1 - x, fitted.height() - 1 - y));
      if (d < kRingWidth) border.add(fitted, x, y);
    }
  }
  const Rect expanded = intersect(
      Rect{region.x - kRingWidth, region.y - kRingWidth, region.w + 2 * kRingWidth,
           region.h + 2 * kRingWidth},
      Rect{0, 0, wall.width(), wall.height()});
  for (int y = expanded.y; y < expanded.bottom(); ++y)
    for (int x = expanded.x; x < expanded.right(); ++x)
      if (!region.contains(x, y)) ring.add(wall, x, y);
  border.normalize(wall.channels());
  ring.normalize(wall.channels());
  const double hist_term = chi_squared(border, ring);

  // Trial paste for the boundary and structural terms.
  RasterImage trial = wall;
  paste(trial, fitted, region.x, region.y);
  const double seam_term = seam_gradient(trial, region);

  double structure_term = 0.0;
  if (expanded.w >= 11 && expanded.h >= 11) {
    const double s = ssim(to_grayscale(crop(wall, expanded)), to_grayscale(crop(trial, expanded)));
    structure_term = 1.0 - s;
  }

  return weights.histogram * hist_term + weights.seam * seam_term +
         weights.structure * structure_term;
}

std::pair<std::string, double> select_tile(const CandidatePool& pool,
                                           const RasterImage& wall, const Rect& region,
                                           const CompatWeights& weights) {
  if (pool.tiles.empty()) throw InvalidArgument("no candidates");
  std::string best_id;
  double best = 0.0;
  bool first = true;
  for (const auto& entry : pool.tiles) {
    const double f = compatibility(entry.image, wall, region, weights);
    if (first || f < best || (f == best && entry.id < best_id)) {
      best = f;
      best_id = entry.id;
      first = false;
    }
  }
  return {best_id, best};
}

RasterImage feather_blend(const RasterImage& wall, const RasterImage& tile,
                          const Rect& region, int margin) {
  if (region.x < 0 || region.y < 0 || region.right() > wall.width() ||
      region.bottom() > wall.height())
    throw InvalidArgument("region outside wall");
  if (tile.width() != region.w || tile.height() != region.h)
    throw InvalidArgument("tile must be pre-resized to the region");
  if (margin < 0) throw InvalidArgument("margin must be nonnegative");
  if (margin > 0 && 2 * margin >= std::min(region.w, region.h))
    throw InvalidArgument("margin swallows region");

  const RasterImage tile_m = match_channels(tile, wall.channels());
  RasterImage out = wall;
  for (int y = 0; y < region.h; ++y) {
    for (int x = 0; x < region.w; ++x) {
      const int d = std::min(std::min(x, y), std::min(region.w - 1 - x, region.h - 1 - y));
      const int wx = region.x + x, wy = region.y + y;
      if (margin == 0 || d >= margin) {
        for (int c = 0; c < wall.channels(); ++c) out.at(wx, wy, c) = tile_m.at(x, y, c);
      } else {
        const double t = static_cast<double>(d + 1) / (margin + 1);
        for (int c = 0; c < wall.channels(); ++c)
          out.at(wx, wy, c) =
              round_clamp_u8(t * tile_m.at(x, y, c) + (1.0 - t) * wall.at(wx, wy, c));
      }
    }
  }
  return out;
}

std::pair<RasterImage, std::vector<PlacementResult>> fill_all(
    const RasterImage& wall, const std::vector<RegionAnnotation>& annotations,
    const CandidatePool& pool, const FillConfig& cfg) {
  RasterImage composite = wall;
  std::vector<PlacementResult> placements;
  for (const RegionAnnotation& ann : annotations) {
    if (ann.cls != RegionClass::kNoTile) continue;
    const auto start = std::chrono::steady_clock::now();
    const Rect region = annotation_rect(ann, wall.width(), wall.height());
    auto [id, objective] = select_tile(pool, composite, region, cfg.weights);
    const auto it = std::find_if(pool.tiles.begin(), pool.tiles.end(),
                                 [&](const auto& e) { return e.id == id; });
    const RasterImage fitted = resize(match_channels(it->image, composite.channels()),
                                      region.w, region.h, ResizeMode::kBicubic);
    // A margin too fat for a small region degrades to the largest legal one.
    int margin = cfg.margin;
    if (margin > 0 && 2 * margin >= std::min(region.w, region.h))
      margin = std::max(0, (std::min(region.w, region.h) - 1) / 2);
    composite = feather_blend(composite, fitted, region, margin);
    const auto stop = std::chrono::steady_clock::now();
    PlacementResult pr;
    pr.region = ann;
    pr.chosen_id = id;
    pr.objective = objective;
    pr.composited = crop(composite, region);
    pr.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    placements.push_back(std::move(pr));
  }
  return {std::move(composite), std::move(placements)};
}

}  // namespace tilekit
