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
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tilekit/dataset.hpp"
#include "tilekit/fracconv.hpp"
#include "tilekit/fractal.hpp"
#include "tilekit/image_io.hpp"
#include "tilekit/metrics.hpp"
#include "tilekit/mosaic.hpp"
#include "tilekit/parallel.hpp"
#include "tilekit/tilefill.hpp"

namespace {

using namespace tilekit;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BlurSpec parse_blur(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (!parts.empty() && parts[0] == "gaussian")
    return BlurSpec::gaussian(parts.size() > 1 ? std::stod(parts[1]) : 2.0);
  if (!parts.empty() && parts[0] == "motion")
    return BlurSpec::motion(parts.size() > 1 ? std::stod(parts[1]) : 9.0,
                            parts.size() > 2 ? std::stod(parts[2]) : 0.0);
  throw InvalidArgument("blur must be gaussian:<sigma> or motion:<length>:<angle>");
}

/// Sidecar figure rects: `<tile stem>.rects` next to the tile, lines
/// `A x y w h` and `B x y w h`. Falls back to the vertical midline split.
TileFigures load_tile_figures(const std::filesystem::path& tile_path) {
  RasterImage tile = load_image(tile_path);
  std::filesystem::path sidecar = tile_path;
  sidecar.replace_extension(".rects");
  if (!std::filesystem::exists(sidecar)) return TileFigures::midline_split(std::move(tile));

  TileFigures t;
  bool have_a = false, have_b = false;
  std::istringstream in(read_text(sidecar));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string which;
    Rect r;
    if (!(fields >> which >> r.x >> r.y >> r.w >> r.h) || (which != "A" && which != "B"))
      throw InvalidArgument(sidecar.string() + ":" + std::to_string(line_no) +
                            ": expected `A|B x y w h`");
    (which == "A" ? t.figure_a : t.figure_b) = r;
    (which == "A" ? have_a : have_b) = true;
  }
  if (!have_a || !have_b)
    throw InvalidArgument(sidecar.string() + ": needs both an A and a B rect");
  t.tile = std::move(tile);
  t.validate();
  return t;
}

int run(int argc, char** argv) {
  CLI::App app{"tilekit: detail-richness segmentation, mosaic augmentation, and tile filling"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- fd -------------------------------------------------------------
  auto* fd_cmd = app.add_subcommand("fd", "Box-counting dimension of an image");
  std::string fd_input, fd_series;
  bool fd_edges = false;
  fd_cmd->add_option("input", fd_input, "image file")->required();
  fd_cmd->add_option("--series", fd_series, "write the (s, N(s)) table as CSV");
  fd_cmd->add_flag("--edges", fd_edges,
                   "measure the Canny(50,150) edge set instead of the mean-thresholded set");
  fd_cmd->callback([&] {
    const RasterImage gray = to_grayscale(load_image(fd_input));
    const EdgeMap map =
        fd_edges ? canny(gray, 50.0, 150.0) : binarize(gray, Threshold::mean());
    if (map.occupied_count() == 0) throw Error("empty set has no dimension");
    const FdResult result = fractal_dimension(map);
    std::cout << "dimension " << result.dimension << "\n"
              << "r_squared " << result.r_squared << "\n";
    if (!fd_series.empty()) {
      std::ostringstream csv;
      csv << "s,n\n";
      for (const auto& e : result.series.entries) csv << e.size << ',' << e.count << '\n';
      write_text_atomic(csv.str(), fd_series);
    }
  });

  // ---- fracconv -------------------------------------------------------
  auto* fc_cmd = app.add_subcommand("fracconv", "Sliding-window richness mask");
  std::string fc_input, fc_out, fc_dump;
  FcParams fc_params;
  fc_params.threads = default_thread_count();
  fc_cmd->add_option("input", fc_input, "image file")->required();
  fc_cmd->add_option("--out", fc_out, "mask PNG")->required();
  fc_cmd->add_option("--patch", fc_params.patch, "window side (default 8)");
  fc_cmd->add_option("--stride", fc_params.stride, "scan step (default 1)");
  fc_cmd->add_option("--low", fc_params.canny_low, "edge low threshold (default 50)");
  fc_cmd->add_option("--high", fc_params.canny_high, "edge high threshold (default 150)");
  fc_cmd->add_flag("--global-canny", fc_params.global_canny,
                   "one whole-image edge pass instead of per-window detection");
  fc_cmd->add_option("--dump-fd", fc_dump, "CSV of raw per-center dimensions");
  fc_cmd->add_option("--threads", fc_params.threads, "worker cap (default: logical cores)");
  fc_cmd->callback([&] {
    const RasterImage img = load_image(fc_input);
    std::vector<FdSample> samples;
    const RichnessMask mask =
        fractal_convolution(img, fc_params, fc_dump.empty() ? nullptr : &samples);
    save_image(RasterImage(mask.width, mask.height, 1, mask.data), fc_out);
    if (!fc_dump.empty()) {
      std::ostringstream csv;
      csv << "cx,cy,fd\n";
      csv.setf(std::ios::fixed);
      csv.precision(6);
      for (const auto& s : samples) csv << s.cx << ',' << s.cy << ',' << s.fd << '\n';
      write_text_atomic(csv.str(), fc_dump);
    }
  });

  // ---- segment ---------------------------------------------------------
  auto* seg_cmd = app.add_subcommand("segment", "Apply a richness mask to its image");
  std::string seg_input, seg_mask, seg_out, seg_mode = "scaled";
  int seg_threshold = 128;
  seg_cmd->add_option("input", seg_input, "image file")->required();
  seg_cmd->add_option("--mask", seg_mask, "mask PNG")->required();
  seg_cmd->add_option("--out", seg_out, "output image")->required();
  seg_cmd->add_option("--mode", seg_mode, "scaled | binary (default scaled)")
      ->check(CLI::IsMember({"scaled", "binary"}));
  seg_cmd->add_option("--threshold", seg_threshold, "binary keep threshold (default 128)")
      ->check(CLI::Range(0, 255));
  seg_cmd->callback([&] {
    const RasterImage img = load_image(seg_input);
    const RasterImage mask_img = load_image(seg_mask);
    if (mask_img.channels() != 1) throw InvalidArgument("mask must be single-channel");
    RichnessMask mask;
    mask.width = mask_img.width();
    mask.height = mask_img.height();
    mask.data = mask_img.data();
    const SegmentMode mode = seg_mode == "scaled" ? SegmentMode::kScaled : SegmentMode::kBinary;
    save_image(segment(img, mask, mode, static_cast<std::uint8_t>(seg_threshold)), seg_out);
  });

  // ---- mosaic ----------------------------------------------------------
  auto* mosaic_cmd = app.add_subcommand("mosaic", "Two-figure composition augmentations");
  mosaic_cmd->require_subcommand(1);

  auto* intra_cmd = mosaic_cmd->add_subcommand("intra", "Eight flip compositions of one tile");
  std::string intra_tile, intra_dir, intra_blur = "gaussian:2";
  int intra_seam = 4;
  intra_cmd->add_option("tile", intra_tile, "tile image")->required();
  intra_cmd->add_option("--out-dir", intra_dir, "output directory")->required();
  intra_cmd->add_option("--seam-width", intra_seam, "junction strip width (default 4)");
  intra_cmd->add_option("--blur", intra_blur, "gaussian:<sigma> | motion:<len>:<angle>");
  intra_cmd->callback([&] {
    const TileFigures t = load_tile_figures(intra_tile);
    const auto outs = intra_mosaicslice(t, intra_seam, parse_blur(intra_blur));
    std::filesystem::create_directories(intra_dir);
    const std::string stem = std::filesystem::path(intra_tile).stem().string();
    for (std::size_t k = 0; k < outs.size(); ++k) {
      std::string code = composition_name(kAllCompositions[k]);
      for (auto& c : code) c = (c == '\'') ? 'f' : static_cast<char>(std::tolower(c));
      save_image(outs[k], std::filesystem::path(intra_dir) / (stem + "__intra_" + code + ".png"));
    }
    std::cout << "wrote " << outs.size() << " compositions\n";
  });

  auto* inter_cmd = mosaic_cmd->add_subcommand("inter", "Blend figures across two tiles");
  std::string inter_a, inter_b, inter_out;
  std::uint64_t inter_seed = 0;
  inter_cmd->add_option("tile-a", inter_a, "host tile")->required();
  inter_cmd->add_option("tile-b", inter_b, "partner tile")->required();
  inter_cmd->add_option("--out", inter_out, "output image")->required();
  inter_cmd->add_option("--seed", inter_seed, "placement seed (default 0)");
  inter_cmd->callback([&] {
    const TileFigures a = load_tile_figures(inter_a);
    const TileFigures b = load_tile_figures(inter_b);
    const InterResult result = inter_mosaicslice(a, b, inter_seed);
    save_image(result.image, inter_out);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "center_offset " << result.center_offset << "\n";
  });

  // ---- augment -----------------------------------------------------------
  auto* aug_cmd = app.add_subcommand("augment", "Corpus expansion with provenance manifest");
  std::string aug_dir, aug_out, aug_ops, aug_mosaic = "none", aug_manifest, aug_blur = "gaussian:2";
  ExpandConfig aug_cfg;
  aug_cfg.threads = default_thread_count();
  aug_cmd->add_option("dir", aug_dir, "source image directory")->required();
  aug_cmd->add_option("--out-dir", aug_out, "output directory")->required();
  aug_cmd->add_option("--ops", aug_ops,
                      "comma list: brightness:<f>,sharpen,hist-eq,hflip,gauss-noise:<s>,blur:<s>");
  aug_cmd->add_option("--variants-per-image", aug_cfg.variants_per_image,
                      "classical variants per source (default 0)");
  aug_cmd->add_option("--mosaic", aug_mosaic, "none | intra | inter (default none)")
      ->check(CLI::IsMember({"none", "intra", "inter"}));
  aug_cmd->add_option("--seed", aug_cfg.seed, "global seed (default 0)");
  aug_cmd->add_option("--threads", aug_cfg.threads, "worker cap (default: logical cores)");
  aug_cmd->add_option("--seam-width", aug_cfg.seam_width, "mosaic junction width (default 4)");
  aug_cmd->add_option("--blur", aug_blur, "mosaic junction blur (default gaussian:2)");
  aug_cmd->add_option("--manifest", aug_manifest, "manifest path (default out/manifest.jsonl)");
  aug_cmd->callback([&] {
    if (!aug_ops.empty()) {
      std::stringstream ss(aug_ops);
      std::string item;
      while (std::getline(ss, item, ',')) aug_cfg.ops.push_back(AugmentOp::parse(item));
    }
    aug_cfg.mosaic = aug_mosaic == "none"
                         ? MosaicMode::kNone
                         : (aug_mosaic == "intra" ? MosaicMode::kIntra : MosaicMode::kInter);
    aug_cfg.seam_blur = parse_blur(aug_blur);
    aug_cfg.out_dir = aug_out;
    if (!aug_manifest.empty()) aug_cfg.manifest_path = aug_manifest;
    const AugmentationManifest manifest = expand_corpus(aug_dir, aug_cfg);
    std::size_t written = 0;
    for (const auto& e : manifest.entries) {
      if (!e.output.empty()) ++written;
      for (const auto& w : e.warnings) std::cerr << "warning: " << e.source << ": " << w << "\n";
    }
    std::cout << "wrote " << written << " outputs\n";
  });

  // ---- fill ---------------------------------------------------------------
  auto* fill_cmd = app.add_subcommand("fill", "Fill annotated no-tile regions from a pool");
  std::string fill_wall, fill_ann, fill_pool, fill_out, fill_report, fill_weights;
  FillConfig fill_cfg;
  int fill_upscale = 4;
  fill_cmd->add_option("--wall", fill_wall, "wall image")->required();
  fill_cmd->add_option("--annotations", fill_ann, "annotation txt (class cx cy w h)")->required();
  fill_cmd->add_option("--pool", fill_pool, "candidate tile directory")->required();
  fill_cmd->add_option("--out", fill_out, "restored wall")->required();
  fill_cmd->add_option("--report", fill_report, "JSON placement report");
  fill_cmd->add_option("--margin", fill_cfg.margin, "feather band width (default 6)");
  fill_cmd->add_option("--upscale", fill_upscale,
                       "bicubic pre-enlargement of pool tiles (default 4, 1 disables)");
  fill_cmd->add_option("--weights", fill_weights,
                       "objective weights `hist,seam,structure` (default 0.5,0.3,0.2)");
  fill_cmd->callback([&] {
    if (!fill_weights.empty()) {
      std::stringstream ss(fill_weights);
      std::string item;
      std::vector<double> w;
      while (std::getline(ss, item, ',')) w.push_back(std::stod(item));
      if (w.size() != 3) throw InvalidArgument("--weights needs three values");
      fill_cfg.weights = {w[0], w[1], w[2]};
    }
    const RasterImage wall = load_image(fill_wall);
    const auto annotations =
        load_annotations(read_text(fill_ann), wall.width(), wall.height());
    CandidatePool pool = CandidatePool::from_directory(fill_pool);
    if (fill_upscale > 1)
      for (auto& entry : pool.tiles) entry.image = upscale_tile(entry.image, fill_upscale);
    auto [restored, placements] = fill_all(wall, annotations, pool, fill_cfg);
    save_image(restored, fill_out);
    if (!fill_report.empty()) {
      nlohmann::json report = nlohmann::json::array();
      for (std::size_t i = 0; i < placements.size(); ++i) {
        report.push_back({{"region", i},
                          {"chosen_id", placements[i].chosen_id},
                          {"objective", placements[i].objective},
                          {"elapsed_ms", placements[i].elapsed_ms}});
      }
      write_text_atomic(report.dump(2) + "\n", fill_report);
    }
    std::cout << "filled " << placements.size() << " regions\n";
  });

  // ---- metrics -------------------------------------------------------------
  auto* metrics_cmd = app.add_subcommand("metrics", "Quantitative evaluation");
  metrics_cmd->require_subcommand(1);

  auto* ssim_cmd = metrics_cmd->add_subcommand("ssim", "Structural similarity of two images");
  std::string ssim_a, ssim_b;
  ssim_cmd->add_option("a", ssim_a, "first image")->required();
  ssim_cmd->add_option("b", ssim_b, "second image")->required();
  ssim_cmd->callback([&] {
    const double value =
        ssim(to_grayscale(load_image(ssim_a)), to_grayscale(load_image(ssim_b)));
    std::cout << "ssim " << value << "\n";
  });

  auto* report_cmd = metrics_cmd->add_subcommand("fd-report", "Per-image dimension table");
  std::string report_dir, report_out;
  bool report_no_pre = false;
  report_cmd->add_option("dir", report_dir, "image directory")->required();
  report_cmd->add_option("--out", report_out, "CSV path")->required();
  report_cmd->add_flag("--no-preprocess", report_no_pre,
                       "skip the denoising blur before edge detection");
  report_cmd->callback([&] {
    const FdReport report = fd_report(report_dir, !report_no_pre);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    write_text_atomic(fd_report_csv(report), report_out);
    std::cout << "wrote " << report.rows.size() << " rows\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
