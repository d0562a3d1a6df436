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

#include <algorithm>
#include <cmath>

#include "sparq/error.hpp"
#include "sparq/sparq.hpp"

namespace sparq {

double psnr(const GrayImage& ref, const GrayImage& dis) {
  if (ref.rows() != dis.rows() || ref.cols() != dis.cols()) {
    throw DimensionMismatch("psnr: images differ in size");
  }
  const auto a = ref.pixels();
  const auto b = dis.pixels();
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return kPsnrCap;
  const double mse = static_cast<double>(sse) / static_cast<double>(a.size());
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

}  // namespace sparq
