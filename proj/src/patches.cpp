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

#include "sparq/patches.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sparq/entropy.hpp"
#include "sparq/error.hpp"

namespace sparq {

namespace {

void check_side(const GrayImage& image, int side) {
  if (side < 1 || side > image.rows() || side > image.cols()) {
    throw InvalidArgument("patch side " + std::to_string(side) + " does not fit the image");
  }
}

double window_variance(const GrayImage& image, Anchor a, int side) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int c = 0; c < side; ++c) {
    for (int r = 0; r < side; ++r) {
      const double v = image.at(a.row + r, a.col + c);
      sum += v;
      sum_sq += v * v;
    }
  }
  const double n = static_cast<double>(side) * side;
  const double mean = sum / n;
  return std::max(0.0, sum_sq / n - mean * mean);
}

}  // namespace

Eigen::VectorXd patch_vector(const GrayImage& image, Anchor anchor, int side) {
  Eigen::VectorXd v(side * side);
  for (int c = 0; c < side; ++c) {
    for (int r = 0; r < side; ++r) {
      v(c * side + r) = image.at(anchor.row + r, anchor.col + c);
    }
  }
  return v;
}

PatchMatrix extract_patches(const GrayImage& image, const std::vector<Anchor>& anchors,
                            int side) {
  check_side(image, side);
  PatchMatrix out;
  out.side = side;
  out.anchors = anchors;
  out.data.resize(side * side, static_cast<Eigen::Index>(anchors.size()));
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    const Anchor a = anchors[j];
    if (a.row < 0 || a.col < 0 || a.row + side > image.rows() || a.col + side > image.cols()) {
      throw InvalidArgument("extract_patches: window outside image");
    }
    out.data.col(static_cast<Eigen::Index>(j)) = patch_vector(image, a, side);
  }
  return out;
}

TrainingPatches extract_training_patches(const GrayImage& image, int side, int target,
                                         std::uint64_t seed) {
  check_side(image, side);
  if (target < 1) throw InvalidArgument("extract_training_patches: target must be >= 1");

  const int anchor_rows = image.rows() - side + 1;
  const int anchor_cols = image.cols() - side + 1;
  std::vector<int> order(static_cast<std::size_t>(anchor_rows) * anchor_cols);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Anchor> chosen;
  chosen.reserve(static_cast<std::size_t>(target));
  for (int index : order) {
    const Anchor a{index / anchor_cols, index % anchor_cols};
    if (window_variance(image, a, side) < kHomogeneousVariance) continue;
    chosen.push_back(a);
    if (static_cast<int>(chosen.size()) == target) break;
  }

  TrainingPatches result;
  result.short_of_target = static_cast<int>(chosen.size()) < target;
  result.patches = extract_patches(image, chosen, side);
  return result;
}

int salient_count(int valid_anchors, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("salient fraction must lie in (0, 1]");
  }
  const int q = static_cast<int>(std::round(fraction * valid_anchors));
  return std::clamp(q, 1, valid_anchors);
}

std::vector<Anchor> rank_anchors_by_entropy(const GrayImage& image, int side) {
  const EntropyMap map = local_entropy_map(image, side);
  std::vector<int> order(map.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return map.values[a] > map.values[b]; });
  std::vector<Anchor> anchors;
  anchors.reserve(order.size());
  for (int index : order) anchors.push_back({index / map.cols, index % map.cols});
  return anchors;
}

SalientPatches select_salient_patches(const GrayImage& ref, const GrayImage& dis, int side,
                                      double fraction) {
  if (ref.rows() != dis.rows() || ref.cols() != dis.cols()) {
    throw DimensionMismatch("reference and distorted images differ in size");
  }
  check_side(ref, side);
  std::vector<Anchor> ranked = rank_anchors_by_entropy(ref, side);
  const int valid = static_cast<int>(ranked.size());
  ranked.resize(static_cast<std::size_t>(salient_count(valid, fraction)));

  SalientPatches out;
  out.valid_anchors = valid;
  out.reference = extract_patches(ref, ranked, side);
  out.distorted = extract_patches(dis, ranked, side);
  return out;
}

}  // namespace sparq
