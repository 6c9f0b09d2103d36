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
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tilekit/image_io.hpp"

using namespace tilekit;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::filesystem::path& tmp) {
  const std::filesystem::path out = tmp / "stdout.txt";
  const std::string cmd = std::string(TILEKIT_CLI_PATH) + " " + args + " >" + out.string() +
                          " 2>" + (tmp / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.stdout_text = buf.str();
  return r;
}

}  // namespace

TEST_CASE("fd subcommand prints dimension and fit quality, exit 0") {
  tkfix::TempDir tmp("cli_fd");
  const auto carpet = tkfix::sierpinski_carpet(5, 4);  // 243 x 243
  save_image(RasterImage(carpet.width, carpet.height, 1, carpet.data), tmp.path() / "in.png");
  const auto r = run_cli("fd " + (tmp.path() / "in.png").string() + " --series " +
                             (tmp.path() / "series.csv").string(),
                         tmp.path());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("dimension") != std::string::npos);
  CHECK(r.stdout_text.find("r_squared") != std::string::npos);
  std::ifstream csv(tmp.path() / "series.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "s,n");
}

TEST_CASE("fd --edges measures the edge set") {
  tkfix::TempDir tmp("cli_fd_edges");
  save_image(tkfix::detailed_scene(96, 96), tmp.path() / "in.png");
  const auto r = run_cli("fd " + (tmp.path() / "in.png").string() + " --edges", tmp.path());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("dimension") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  tkfix::TempDir tmp("cli_usage");
  save_image(tkfix::constant(32, 32, 7), tmp.path() / "in.png");
  CHECK(run_cli("definitely-not-a-subcommand", tmp.path()).exit_code == 2);
  CHECK(run_cli("fracconv " + (tmp.path() / "in.png").string() + " --patch 0 --out " +
                    (tmp.path() / "m.png").string(),
                tmp.path())
            .exit_code == 2);
  CHECK(run_cli("fracconv " + (tmp.path() / "in.png").string() + " --patch 64 --out " +
                    (tmp.path() / "m.png").string(),
                tmp.path())
            .exit_code == 2);
}

TEST_CASE("runtime errors exit with code 1") {
  tkfix::TempDir tmp("cli_runtime");
  CHECK(run_cli("fd " + (tmp.path() / "missing.png").string(), tmp.path()).exit_code == 1);
}

TEST_CASE("help exits 0") {
  tkfix::TempDir tmp("cli_help");
  CHECK(run_cli("--help", tmp.path()).exit_code == 0);
  CHECK(run_cli("fracconv --help", tmp.path()).exit_code == 0);
}

TEST_CASE("failed runs leave no partial output file") {
  tkfix::TempDir tmp("cli_atomic");
  save_image(tkfix::constant(16, 16, 7), tmp.path() / "in.png");
  // patch exceeds image: validation fires before any write
  const auto r = run_cli("fracconv " + (tmp.path() / "in.png").string() + " --patch 32 --out " +
                             (tmp.path() / "mask.png").string(),
                         tmp.path());
  CHECK(r.exit_code == 2);
  CHECK(!std::filesystem::exists(tmp.path() / "mask.png"));
  CHECK(!std::filesystem::exists(tmp.path() / "mask.png.tmp"));
}

TEST_CASE("fracconv then segment round trip through files") {
  tkfix::TempDir tmp("cli_pipe");
  save_image(to_grayscale(tkfix::textured_rgb(48, 48, 2)), tmp.path() / "in.png");
  const auto r1 = run_cli("fracconv " + (tmp.path() / "in.png").string() + " --out " +
                              (tmp.path() / "mask.png").string() + " --threads 2",
                          tmp.path());
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run_cli("segment " + (tmp.path() / "in.png").string() + " --mask " +
                              (tmp.path() / "mask.png").string() + " --out " +
                              (tmp.path() / "seg.png").string() + " --mode binary",
                          tmp.path());
  CHECK(r2.exit_code == 0);
  CHECK(load_image(tmp.path() / "seg.png").width() == 48);
}

TEST_CASE("mosaic intra writes eight files") {
  tkfix::TempDir tmp("cli_intra");
  save_image(tkfix::textured_rgb(48, 32, 6), tmp.path() / "tile.png");
  const auto r = run_cli("mosaic intra " + (tmp.path() / "tile.png").string() + " --out-dir " +
                             (tmp.path() / "out").string(),
                         tmp.path());
  CHECK(r.exit_code == 0);
  std::size_t count = 0;
  for (const auto& e : std::filesystem::directory_iterator(tmp.path() / "out"))
    if (e.path().extension() == ".png") ++count;
  CHECK(count == 8);
}

TEST_CASE("mosaic intra honors a figure-rect sidecar") {
  tkfix::TempDir tmp("cli_rects");
  save_image(tkfix::textured_rgb(64, 40, 7), tmp.path() / "tile.png");
  write_text_atomic("A 2 4 24 30\nB 36 4 24 30\n", tmp.path() / "tile.rects");
  const auto r = run_cli("mosaic intra " + (tmp.path() / "tile.png").string() + " --out-dir " +
                             (tmp.path() / "out").string() + " --seam-width 0",
                         tmp.path());
  CHECK(r.exit_code == 0);
  // with the sidecar geometry and no seam, composition AB reproduces the tile
  const auto ab = load_image(tmp.path() / "out" / "tile__intra_ab.png");
  CHECK(ab == load_image(tmp.path() / "tile.png"));
}

TEST_CASE("mosaic inter is seed-reproducible through the CLI") {
  tkfix::TempDir tmp("cli_inter");
  save_image(tkfix::textured_rgb(48, 48, 8), tmp.path() / "a.png");
  save_image(tkfix::textured_rgb(48, 48, 9), tmp.path() / "b.png");
  const std::string base = "mosaic inter " + (tmp.path() / "a.png").string() + " " +
                           (tmp.path() / "b.png").string() + " --seed 5 --out ";
  REQUIRE(run_cli(base + (tmp.path() / "o1.png").string(), tmp.path()).exit_code == 0);
  REQUIRE(run_cli(base + (tmp.path() / "o2.png").string(), tmp.path()).exit_code == 0);
  CHECK(load_image(tmp.path() / "o1.png") == load_image(tmp.path() / "o2.png"));
}

TEST_CASE("metrics ssim prints a value of 1 for identical files") {
  tkfix::TempDir tmp("cli_ssim");
  save_image(to_grayscale(tkfix::textured_rgb(32, 32, 4)), tmp.path() / "x.png");
  const auto r = run_cli("metrics ssim " + (tmp.path() / "x.png").string() + " " +
                             (tmp.path() / "x.png").string(),
                         tmp.path());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("ssim 1") != std::string::npos);
}

TEST_CASE("metrics fd-report writes the csv") {
  tkfix::TempDir tmp("cli_report");
  std::filesystem::create_directories(tmp.path() / "imgs");
  save_image(to_grayscale(tkfix::textured_rgb(64, 64, 3)), tmp.path() / "imgs" / "a.png");
  const auto r = run_cli("metrics fd-report " + (tmp.path() / "imgs").string() + " --out " +
                             (tmp.path() / "report.csv").string(),
                         tmp.path());
  CHECK(r.exit_code == 0);
  std::ifstream csv(tmp.path() / "report.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "name,fd_o,fd_p");
}

TEST_CASE("fill composes the end-to-end file pipeline") {
  tkfix::TempDir tmp("cli_fill");
  const auto wall = tkfix::textured_rgb(96, 64, 31);
  save_image(wall, tmp.path() / "wall.png");
  write_text_atomic("0 0.25 0.5 0.2 0.25\n1 0.75 0.5 0.2 0.25\n", tmp.path() / "wall.txt");
  std::filesystem::create_directories(tmp.path() / "pool");
  save_image(crop(wall, Rect{14, 24, 20, 16}), tmp.path() / "pool" / "patch.png");
  const auto r = run_cli("fill --wall " + (tmp.path() / "wall.png").string() +
                             " --annotations " + (tmp.path() / "wall.txt").string() +
                             " --pool " + (tmp.path() / "pool").string() + " --out " +
                             (tmp.path() / "restored.png").string() + " --report " +
                             (tmp.path() / "report.json").string(),
                         tmp.path());
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(tmp.path() / "restored.png"));
  std::ifstream report(tmp.path() / "report.json");
  std::ostringstream buf;
  buf << report.rdbuf();
  CHECK(buf.str().find("chosen_id") != std::string::npos);
  CHECK(buf.str().find("elapsed_ms") != std::string::npos);
}
