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

#include "sparq/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "sparq/error.hpp"

namespace sparq {

ColorImage load_color_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw IoError("cannot open image: " + path.string());
  }
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw IoError("cannot decode image: " + path.string());
  if (mat.depth() != CV_8U) {
    throw FormatError("only 8-bit images are supported: " + path.string());
  }

  ColorImage image;
  image.rows = mat.rows;
  image.cols = mat.cols;
  const int src_channels = mat.channels();
  if (src_channels == 1) {
    image.channels = 1;
  } else if (src_channels == 3 || src_channels == 4) {
    image.channels = 3;
  } else {
    throw FormatError("unsupported channel count in " + path.string());
  }
  image.data.resize(static_cast<std::size_t>(image.rows) * image.cols * image.channels);

  std::size_t out = 0;
  for (int r = 0; r < mat.rows; ++r) {
    const std::uint8_t* row = mat.ptr<std::uint8_t>(r);
    for (int c = 0; c < mat.cols; ++c) {
      const std::uint8_t* px = row + static_cast<std::size_t>(c) * src_channels;
      if (src_channels == 1) {
        image.data[out++] = px[0];
      } else {
        // OpenCV stores BGR(A).
        image.data[out++] = px[2];
        image.data[out++] = px[1];
        image.data[out++] = px[0];
      }
    }
  }
  return image;
}

GrayImage load_gray_image(const std::filesystem::path& path) {
  return to_grayscale(load_color_image(path));
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  const auto pixels = image.pixels();
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void save_entropy_map_pgm(const EntropyMap& map, const std::filesystem::path& path) {
  const auto [lo, hi] = std::minmax_element(map.values.begin(), map.values.end());
  const double low = lo == map.values.end() ? 0.0 : *lo;
  const double span = lo == map.values.end() ? 0.0 : *hi - *lo;
  std::vector<std::uint8_t> pixels(map.values.size(), 0);
  if (span > 0.0) {
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * (map.values[i] - low) / span));
    }
  }
  save_pgm(GrayImage(map.rows, map.cols, std::move(pixels)), path);
}

}  // namespace sparq
