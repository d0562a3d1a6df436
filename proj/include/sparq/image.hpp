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

#include <cstdint>
#include <span>
#include <vector>

namespace sparq {

/// 8-bit single-channel image, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  /// Filled with `value`. Throws InvalidArgument on a zero dimension.
  GrayImage(int rows, int cols, std::uint8_t value = 0);
  /// Takes ownership of `pixels`; its size must equal rows*cols.
  GrayImage(int rows, int cols, std::vector<std::uint8_t> pixels);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t at(int row, int col) const { return pixels_[index(row, col)]; }
  std::uint8_t& at(int row, int col) { return pixels_[index(row, col)]; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Interleaved 8-bit image with 1 or 3 channels (R, G, B order).
struct ColorImage {
  int rows = 0;
  int cols = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;
};

/// BT.601 luma, rounded half away from zero. One-channel input passes through.
/// Throws InvalidArgument for any channel count other than 1 or 3.
GrayImage to_grayscale(const ColorImage& image);

/// Viewing-distance factor max(1, round(min(rows, cols) / 256)).
int downsample_factor(const GrayImage& image);

/// Disjoint FxF box average with rounding; trailing partial blocks are dropped.
/// F == 1 returns a copy. Throws InvalidArgument if F < 1 or F exceeds a dimension.
GrayImage downsample(const GrayImage& image, int factor);

}  // namespace sparq
