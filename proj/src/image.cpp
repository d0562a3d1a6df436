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

#include "sparq/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparq/error.hpp"

namespace sparq {

GrayImage::GrayImage(int rows, int cols, std::uint8_t value)
    : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw InvalidArgument("GrayImage: dimensions must be positive");
  }
  pixels_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), value);
}

GrayImage::GrayImage(int rows, int cols, std::vector<std::uint8_t> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (rows <= 0 || cols <= 0) {
    throw InvalidArgument("GrayImage: dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InvalidArgument("GrayImage: pixel count does not match rows*cols");
  }
}

GrayImage to_grayscale(const ColorImage& image) {
  if (image.rows <= 0 || image.cols <= 0) {
    throw InvalidArgument("to_grayscale: empty image");
  }
  const std::size_t count = static_cast<std::size_t>(image.rows) * image.cols;
  if (image.channels == 1) {
    if (image.data.size() != count) throw InvalidArgument("to_grayscale: bad buffer size");
    return GrayImage(image.rows, image.cols, image.data);
  }
  if (image.channels != 3) {
    throw InvalidArgument("to_grayscale: unsupported channel count " +
                          std::to_string(image.channels));
  }
  if (image.data.size() != 3 * count) throw InvalidArgument("to_grayscale: bad buffer size");

  std::vector<std::uint8_t> gray(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double luma = 0.299 * image.data[3 * i] + 0.587 * image.data[3 * i + 1] +
                        0.114 * image.data[3 * i + 2];
    // std::round is half-away-from-zero.
    gray[i] = static_cast<std::uint8_t>(std::clamp(std::round(luma), 0.0, 255.0));
  }
  return GrayImage(image.rows, image.cols, std::move(gray));
}

int downsample_factor(const GrayImage& image) {
  const int g = std::min(image.rows(), image.cols());
  return std::max(1, static_cast<int>(std::round(g / 256.0)));
}

GrayImage downsample(const GrayImage& image, int factor) {
  if (factor < 1) throw InvalidArgument("downsample: factor must be >= 1");
  if (factor > image.rows() || factor > image.cols()) {
    throw InvalidArgument("downsample: factor larger than image");
  }
  if (factor == 1) return image;

  const int out_rows = image.rows() / factor;
  const int out_cols = image.cols() / factor;
  const int area = factor * factor;
  GrayImage out(out_rows, out_cols);
  for (int r = 0; r < out_rows; ++r) {
    for (int c = 0; c < out_cols; ++c) {
      int sum = 0;
      for (int dr = 0; dr < factor; ++dr) {
        for (int dc = 0; dc < factor; ++dc) {
          sum += image.at(r * factor + dr, c * factor + dc);
        }
      }
      // Non-negative sum, so adding half the divisor rounds half away from zero.
      out.at(r, c) = static_cast<std::uint8_t>((sum + area / 2) / area);
    }
  }
  return out;
}

}  // namespace sparq
