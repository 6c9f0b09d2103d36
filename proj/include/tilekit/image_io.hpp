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

#include "tilekit/image.hpp"

namespace tilekit {

/// Load a PNG or JPEG file (sniffed by magic bytes). Alpha is stripped,
/// 16-bit samples are reduced to 8, palettes are expanded. The result has
/// 1 or 3 channels, RGB channel order.
RasterImage load_image(const std::filesystem::path& path);

/// Save as PNG (lossless 8-bit gray or RGB).
void save_png(const RasterImage& img, const std::filesystem::path& path);

/// Save as JPEG, quality 95.
void save_jpeg(const RasterImage& img, const std::filesystem::path& path);

/// Save dispatched on extension (.png / .jpg / .jpeg), written atomically:
/// the file is staged next to the target and renamed into place, so a
/// failed run never leaves a partial output.
void save_image(const RasterImage& img, const std::filesystem::path& path);

/// Atomic text write (same staging discipline as save_image).
void write_text_atomic(const std::string& text, const std::filesystem::path& path);

}  // namespace tilekit
