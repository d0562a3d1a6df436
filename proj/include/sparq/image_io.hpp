// Copyright 2026 The SPARQ Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>

#include "sparq/entropy.hpp"
#include "sparq/image.hpp"

namespace sparq {

/// Decodes an 8-bit PNG, BMP, PGM or PPM file. An alpha channel, if any, is
/// dropped. Throws IoError when the file is missing or cannot be decoded, and
/// FormatError for bit depths other than 8.
ColorImage load_color_image(const std::filesystem::path& path);

/// load_color_image followed by to_grayscale.
GrayImage load_gray_image(const std::filesystem::path& path);

/// Writes a binary PGM (P5).
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

/// Debug dump: entropy values min-max scaled to [0,255] and written as PGM.
void save_entropy_map_pgm(const EntropyMap& map, const std::filesystem::path& path);

}  // namespace sparq
