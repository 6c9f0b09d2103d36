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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tilekit/image.hpp"
#include "tilekit/mosaic.hpp"

namespace tilekit {

/// One classical augmentation. Parameter ranges are validated on use:
/// brightness factor in [1.01, 1.03], noise and blur sigma positive.
struct AugmentOp {
  enum class Kind { kBrightness, kSharpen, kHistEq, kHFlip, kGaussNoise, kBlur };
  Kind kind = Kind::kHFlip;
  double param = 0.0;  // brightness factor / noise sigma / blur sigma

  void validate() const;
  std::string name() const;
  /// Parse "brightness:1.02", "sharpen", "hist-eq", "hflip",
  /// "gauss-noise:8", "blur:1.5". Omitted parameters take the defaults
  /// 1.02 / 8.0 / 1.5.
  static AugmentOp parse(const std::string& text);
};

/// Deterministic for a fixed seed: brightness multiply, unsharp mask
/// (amount 1, sigma 1), per-channel histogram equalization, horizontal
/// flip, seeded additive Gaussian noise, Gaussian blur.
RasterImage apply_augmentation(const RasterImage& img, const AugmentOp& op,
                               std::uint64_t seed);

/// Provenance record: how one output file was produced. `chain` is the
/// serialized operation chain (JSON array, one object per step) with every
/// parameter needed to replay it.
struct ManifestEntry {
  std::string source;   // path relative to the source (or output) root
  std::string output;   // path relative to the output root; empty if skipped
  std::uint64_t seed = 0;
  std::string chain;    // JSON array text
  std::vector<std::string> warnings;
};

struct AugmentationManifest {
  std::vector<ManifestEntry> entries;

  std::string to_jsonl() const;
  static AugmentationManifest from_jsonl(const std::string& text);
};

enum class MosaicMode { kNone, kIntra, kInter };

struct ExpandConfig {
  std::vector<AugmentOp> ops;
  int variants_per_image = 0;
  MosaicMode mosaic = MosaicMode::kNone;
  std::uint64_t seed = 0;
  int threads = 1;
  int seam_width = 4;
  BlurSpec seam_blur = BlurSpec::gaussian(2.0);
  std::filesystem::path out_dir;
  std::filesystem::path manifest_path;  // defaults to out_dir/manifest.jsonl
};

/// Expand a directory of images. The classical stage writes
/// variants_per_image outputs per source (step v applies ops[v mod |ops|]);
/// the mosaic stage then multiplies the resulting corpus (the classical
/// outputs when that stage ran, the originals otherwise) by 8 (intra) or 24
/// (inter: 3 seeded partners, 8 compositions each). Per-item seeds are
/// derived from the global seed and relative path, so the output tree is
/// identical for any worker count. The manifest is written atomically at
/// the end. Unreadable files become warning entries; an empty directory is
/// an error.
AugmentationManifest expand_corpus(const std::filesystem::path& dir, const ExpandConfig& cfg);

/// Re-run one manifest entry: load its source (tried against the source
/// root, then the output root), apply the recorded chain, return the image.
RasterImage replay_entry(const ManifestEntry& entry,
                         const std::filesystem::path& source_root,
                         const std::filesystem::path& output_root);

}  // namespace tilekit
