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

#include "sparq/image.hpp"

namespace sparq {

/// Local Shannon entropy (bits) of every full patch window, indexed by the
/// window's top-left anchor. Values lie in [0, 8].
struct EntropyMap {
  int rows = 0;  ///< number of anchor rows = image rows - side + 1
  int cols = 0;  ///< number of anchor columns = image cols - side + 1
  std::vector<double> values;  ///< row-major, rows*cols entries

  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * cols + col];
  }
};

/// Entropy of an arbitrary set of 8-bit samples, -(1/n) sum f_j log2(f_j/n).
/// An empty set has entropy 0.
double sample_entropy(std::span<const std::uint8_t> samples);

/// Throws InvalidArgument if patch_side < 1 or exceeds either image dimension.
EntropyMap local_entropy_map(const GrayImage& image, int patch_side);

}  // namespace sparq
