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
#include "tilekit/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <json.hpp>

#include "tilekit/edges.hpp"
#include "tilekit/image_io.hpp"
#include "tilekit/parallel.hpp"
#include "tilekit/rng.hpp"

namespace tilekit {
namespace {

using nlohmann::json;

RasterImage brightness(const RasterImage& img, double factor) {
  RasterImage out(img.width(), img.height(), img.channels());
  for (std::size_t i = 0; i < img.data().size(); ++i)
    out.data()[i] = round_clamp_u8(img.data()[i] * factor);
  return out;
}

RasterImage blur_channels(const RasterImage& img, double sigma) {
  FeatureGrid grid(img.width(), img.height(), img.channels());
  for (std::size_t i = 0; i < img.data().size(); ++i) grid.data()[i] = img.data()[i];
  const FeatureGrid blurred = gaussian_blur_grid(grid, sigma);
  RasterImage out(img.width(), img.height(), img.channels());
  for (std::size_t i = 0; i < out.data().size(); ++i)
    out.data()[i] = round_clamp_u8(blurred.data()[i]);
  return out;
}

RasterImage unsharp_mask(const RasterImage& img) {
  FeatureGrid grid(img.width(), img.height(), img.channels());
  for (std::size_t i = 0; i < img.data().size(); ++i) grid.data()[i] = img.data()[i];
  const FeatureGrid blurred = gaussian_blur_grid(grid, 1.0);
  RasterImage out(img.width(), img.height(), img.channels());
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    const double v = img.data()[i];
    out.data()[i] = round_clamp_u8(v + 1.0 * (v - blurred.data()[i]));
  }
  return out;
}

RasterImage hist_equalize(const RasterImage& img) {
  RasterImage out(img.width(), img.height(), img.channels());
  const std::size_t pixels = static_cast<std::size_t>(img.width()) * img.height();
  for (int c = 0; c < img.channels(); ++c) {
    std::array<long long, 256> hist{};
    for (std::size_t i = 0; i < pixels; ++i) ++hist[img.data()[i * img.channels() + c]];
    std::array<long long, 256> cdf{};
    long long acc = 0;
    for (int v = 0; v < 256; ++v) {
      acc += hist[v];
      cdf[v] = acc;
    }
    long long cdf_min = 0;
    for (int v = 0; v < 256; ++v)
      if (cdf[v] > 0) {
        cdf_min = cdf[v];
        break;
      }
    const long long denom = static_cast<long long>(pixels) - cdf_min;
    for (std::size_t i = 0; i < pixels; ++i) {
      const std::uint8_t v = img.data()[i * img.channels() + c];
      // A constant channel maps to itself.
      out.data()[i * img.channels() + c] =
          denom > 0 ? round_clamp_u8(255.0 * (cdf[v] - cdf_min) / denom) : v;
    }
  }
  return out;
}

RasterImage gauss_noise(const RasterImage& img, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  RasterImage out(img.width(), img.height(), img.channels());
  for (std::size_t i = 0; i < img.data().size(); ++i)
    out.data()[i] = round_clamp_u8(img.data()[i] + rng.gaussian(sigma));
  return out;
}

std::string sanitize_code(const char* name) {
  std::string s;
  for (const char* p = name; *p; ++p) s += (*p == '\'') ? 'f' : static_cast<char>(std::tolower(*p));
  return s;
}

json blur_to_json(const BlurSpec& b) {
  if (b.kind == BlurSpec::Kind::kGaussian)
    return json{{"kind", "gaussian"}, {"sigma", b.sigma}};
  return json{{"kind", "motion"}, {"length", b.length}, {"angle", b.angle_deg}};
}

BlurSpec blur_from_json(const json& j) {
  if (j.at("kind") == "gaussian") return BlurSpec::gaussian(j.at("sigma").get<double>());
  return BlurSpec::motion(j.at("length").get<double>(), j.at("angle").get<double>());
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw IoError("source directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return files;
}

int composition_index(const std::string& name) {
  for (std::size_t i = 0; i < kAllCompositions.size(); ++i)
    if (name == composition_name(kAllCompositions[i])) return static_cast<int>(i);
  throw InvalidArgument("unknown composition code: " + name);
}

}  // namespace

void AugmentOp::validate() const {
  switch (kind) {
    case Kind::kBrightness:
      if (!(param >= 1.01 && param <= 1.03))
        throw InvalidArgument("brightness factor must lie in [1.01, 1.03]");
      break;
    case Kind::kGaussNoise:
      if (!(param > 0.0)) throw InvalidArgument("noise sigma must be positive");
      break;
    case Kind::kBlur:
      if (!(param > 0.0)) throw InvalidArgument("blur sigma must be positive");
      break;
    default:
      break;
  }
}

std::string AugmentOp::name() const {
  switch (kind) {
    case Kind::kBrightness: return "brightness";
    case Kind::kSharpen: return "sharpen";
    case Kind::kHistEq: return "hist-eq";
    case Kind::kHFlip: return "hflip";
    case Kind::kGaussNoise: return "gauss-noise";
    case Kind::kBlur: return "blur";
  }
  return "?";
}

AugmentOp AugmentOp::parse(const std::string& text) {
  std::string head = text, arg;
  if (const auto pos = text.find(':'); pos != std::string::npos) {
    head = text.substr(0, pos);
    arg = text.substr(pos + 1);
  }
  AugmentOp op;
  if (head == "brightness") {
    op = {Kind::kBrightness, arg.empty() ? 1.02 : std::stod(arg)};
  } else if (head == "sharpen") {
    op = {Kind::kSharpen, 0.0};
  } else if (head == "hist-eq") {
    op = {Kind::kHistEq, 0.0};
  } else if (head == "hflip") {
    op = {Kind::kHFlip, 0.0};
  } else if (head == "gauss-noise") {
    op = {Kind::kGaussNoise, arg.empty() ? 8.0 : std::stod(arg)};
  } else if (head == "blur") {
    op = {Kind::kBlur, arg.empty() ? 1.5 : std::stod(arg)};
  } else {
    throw InvalidArgument("unknown augmentation: " + text);
  }
  op.validate();
  return op;
}

RasterImage apply_augmentation(const RasterImage& img, const AugmentOp& op,
                               std::uint64_t seed) {
  op.validate();
  switch (op.kind) {
    case AugmentOp::Kind::kBrightness: return brightness(img, op.param);
    case AugmentOp::Kind::kSharpen: return unsharp_mask(img);
    case AugmentOp::Kind::kHistEq: return hist_equalize(img);
    case AugmentOp::Kind::kHFlip: return hflip(img);
    case AugmentOp::Kind::kGaussNoise: return gauss_noise(img, op.param, seed);
    case AugmentOp::Kind::kBlur: return blur_channels(img, op.param);
  }
  throw InvalidArgument("unknown augmentation kind");
}

std::string AugmentationManifest::to_jsonl() const {
  std::string out;
  for (const auto& e : entries) {
    json j{{"source", e.source},
           {"output", e.output},
           {"seed", e.seed},
           {"chain", json::parse(e.chain)},
           {"warnings", e.warnings}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

AugmentationManifest AugmentationManifest::from_jsonl(const std::string& text) {
  AugmentationManifest m;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    const json j = json::parse(line);
    ManifestEntry e;
    e.source = j.at("source").get<std::string>();
    e.output = j.at("output").get<std::string>();
    e.seed = j.at("seed").get<std::uint64_t>();
    e.chain = j.at("chain").dump();
    e.warnings = j.at("warnings").get<std::vector<std::string>>();
    m.entries.push_back(std::move(e));
  }
  return m;
}

AugmentationManifest expand_corpus(const std::filesystem::path& dir, const ExpandConfig& cfg) {
  const std::vector<std::filesystem::path> sources = list_images(dir);
  if (sources.empty()) throw InvalidArgument("source directory holds no images");
  if (cfg.variants_per_image > 0 && cfg.ops.empty())
    throw InvalidArgument("variants requested but no augmentations configured");
  for (const AugmentOp& op : cfg.ops) op.validate();
  if (cfg.out_dir.empty()) throw InvalidArgument("output directory not set");
  std::filesystem::create_directories(cfg.out_dir);

  AugmentationManifest manifest;

  struct CorpusItem {
    std::string relpath;  // provenance name for seeds and manifest
    RasterImage image;
  };
  std::vector<CorpusItem> corpus;

  // Classical stage.
  if (cfg.variants_per_image > 0) {
    std::vector<std::vector<ManifestEntry>> entries(sources.size());
    std::vector<std::vector<CorpusItem>> produced(sources.size());
    parallel_bands(static_cast<int>(sources.size()), cfg.threads, [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        const std::string rel = sources[i].filename().string();
        RasterImage img;
        try {
          img = load_image(sources[i]);
        } catch (const Error& err) {
          ManifestEntry e;
          e.source = rel;
          e.chain = "[]";
          e.warnings.push_back(err.what());
          entries[i].push_back(std::move(e));
          continue;
        }
        const std::string stem = sources[i].stem().string();
        for (int v = 0; v < cfg.variants_per_image; ++v) {
          const AugmentOp& op = cfg.ops[v % cfg.ops.size()];
          const std::uint64_t item_seed = stable_hash(cfg.seed, rel, static_cast<std::uint64_t>(v));
          RasterImage variant = apply_augmentation(img, op, item_seed);
          const std::string out_name =
              stem + "__aug" + std::to_string(v) + "_" + op.name() + ".png";
          save_image(variant, cfg.out_dir / out_name);
          ManifestEntry e;
          e.source = rel;
          e.output = out_name;
          e.seed = item_seed;
          e.chain = json::array({json{{"op", op.name()}, {"param", op.param}}}).dump();
          entries[i].push_back(std::move(e));
          produced[i].push_back({out_name, std::move(variant)});
        }
      }
    });
    for (auto& band : entries)
      manifest.entries.insert(manifest.entries.end(), band.begin(), band.end());
    for (auto& band : produced)
      for (auto& item : band) corpus.push_back(std::move(item));
  } else {
    for (const auto& path : sources) {
      try {
        corpus.push_back({path.filename().string(), load_image(path)});
      } catch (const Error& err) {
        ManifestEntry e;
        e.source = path.filename().string();
        e.chain = "[]";
        e.warnings.push_back(err.what());
        manifest.entries.push_back(std::move(e));
      }
    }
    if (corpus.empty()) throw InvalidArgument("no readable images in source directory");
  }

  // Mosaic stage.
  if (cfg.mosaic != MosaicMode::kNone) {
    if (cfg.mosaic == MosaicMode::kInter && corpus.size() < 2)
      throw InvalidArgument("inter mixing needs at least two tiles");
    std::vector<std::vector<ManifestEntry>> entries(corpus.size());
    parallel_bands(static_cast<int>(corpus.size()), cfg.threads, [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        const std::string& rel = corpus[i].relpath;
        const std::string stem = std::filesystem::path(rel).stem().string();
        if (cfg.mosaic == MosaicMode::kIntra) {
          const TileFigures tf = TileFigures::midline_split(corpus[i].image);
          const std::vector<RasterImage> outs =
              intra_mosaicslice(tf, cfg.seam_width, cfg.seam_blur);
          for (std::size_t k = 0; k < outs.size(); ++k) {
            const char* code = composition_name(kAllCompositions[k]);
            const std::string out_name = stem + "__intra_" + sanitize_code(code) + ".png";
            save_image(outs[k], cfg.out_dir / out_name);
            ManifestEntry e;
            e.source = rel;
            e.output = out_name;
            e.chain = json::array({json{{"op", "intra"},
                                        {"code", code},
                                        {"seam_width", cfg.seam_width},
                                        {"blur", blur_to_json(cfg.seam_blur)}}})
                          .dump();
            entries[i].push_back(std::move(e));
          }
        } else {
          // Three seeded partners, cycling through the others when fewer
          // than three exist; eight compositions of each blended pair.
          std::vector<int> others;
          for (int k = 0; k < static_cast<int>(corpus.size()); ++k)
            if (k != i) others.push_back(k);
          Rng partner_rng(stable_hash(cfg.seed, rel + "#partners"));
          std::vector<int> pool;
          for (int d = 0; d < 3; ++d) {
            if (pool.empty()) pool = others;
            const std::size_t pick = partner_rng.uniform_int(pool.size());
            const int partner = pool[pick];
            pool.erase(pool.begin() + static_cast<long>(pick));

            const std::uint64_t pair_seed =
                stable_hash(cfg.seed, rel + "#inter", static_cast<std::uint64_t>(d));
            const TileFigures tf_a = TileFigures::midline_split(to_rgb(corpus[i].image));
            const TileFigures tf_b = TileFigures::midline_split(to_rgb(corpus[partner].image));
            const InterResult blended = inter_mosaicslice(tf_a, tf_b, pair_seed);
            const TileFigures tf_mix = TileFigures::midline_split(blended.image);
            const std::vector<RasterImage> outs =
                intra_mosaicslice(tf_mix, cfg.seam_width, cfg.seam_blur);
            for (std::size_t k = 0; k < outs.size(); ++k) {
              const char* code = composition_name(kAllCompositions[k]);
              const std::string out_name = stem + "__inter" + std::to_string(d) + "_" +
                                           sanitize_code(code) + ".png";
              save_image(outs[k], cfg.out_dir / out_name);
              ManifestEntry e;
              e.source = rel;
              e.output = out_name;
              e.seed = pair_seed;
              e.chain = json::array({json{{"op", "inter"},
                                          {"partner", corpus[partner].relpath},
                                          {"pair_seed", pair_seed},
                                          {"code", code},
                                          {"seam_width", cfg.seam_width},
                                          {"blur", blur_to_json(cfg.seam_blur)}}})
                            .dump();
              e.warnings = blended.warnings;
              entries[i].push_back(std::move(e));
            }
          }
        }
      }
    });
    for (auto& band : entries)
      manifest.entries.insert(manifest.entries.end(), band.begin(), band.end());
  }

  const std::filesystem::path manifest_path =
      cfg.manifest_path.empty() ? cfg.out_dir / "manifest.jsonl" : cfg.manifest_path;
  write_text_atomic(manifest.to_jsonl(), manifest_path);
  return manifest;
}

RasterImage replay_entry(const ManifestEntry& entry,
                         const std::filesystem::path& source_root,
                         const std::filesystem::path& output_root) {
  auto resolve = [&](const std::string& rel) -> std::filesystem::path {
    if (std::filesystem::exists(source_root / rel)) return source_root / rel;
    if (std::filesystem::exists(output_root / rel)) return output_root / rel;
    throw IoError("cannot resolve manifest source: " + rel);
  };
  RasterImage img = load_image(resolve(entry.source));
  const json chain = json::parse(entry.chain);
  for (const json& step : chain) {
    const std::string op = step.at("op").get<std::string>();
    if (op == "intra" || op == "inter") {
      const int seam_width = step.at("seam_width").get<int>();
      const BlurSpec blur = blur_from_json(step.at("blur"));
      const int code = composition_index(step.at("code").get<std::string>());
      if (op == "inter") {
        const RasterImage partner = load_image(resolve(step.at("partner").get<std::string>()));
        const InterResult blended =
            inter_mosaicslice(TileFigures::midline_split(to_rgb(img)),
                              TileFigures::midline_split(to_rgb(partner)),
                              step.at("pair_seed").get<std::uint64_t>());
        img = blended.image;
      }
      img = intra_mosaicslice(TileFigures::midline_split(img), seam_width,
                              blur)[static_cast<std::size_t>(code)];
    } else {
      AugmentOp aug = AugmentOp::parse(op);
      if (step.contains("param")) aug.param = step.at("param").get<double>();
      if (aug.kind == AugmentOp::Kind::kBrightness || aug.kind == AugmentOp::Kind::kGaussNoise ||
          aug.kind == AugmentOp::Kind::kBlur)
        aug.validate();
      img = apply_augmentation(img, aug, entry.seed);
    }
  }
  return img;
}

}  // namespace tilekit
