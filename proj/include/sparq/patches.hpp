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
#include <vector>

#include <Eigen/Core>

#include "sparq/image.hpp"

namespace sparq {

/// Top-left corner of a patch window.
struct Anchor {
  int row = 0;
  int col = 0;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// Column-stacked vectorized patches. Each column is the column-major
/// vectorization of a side x side window at the matching anchor.
struct PatchMatrix {
  int side = 0;
  Eigen::MatrixXd data;  ///< (side*side) x count
  std::vector<Anchor> anchors;

  int n() const { return side * side; }
  int count() const { return static_cast<int>(anchors.size()); }
};

/// Raw intensities of the window at `anchor`, column-major.
Eigen::VectorXd patch_vector(const GrayImage& image, Anchor anchor, int side);

/// Gathers the windows at `anchors` into a PatchMatrix.
/// Throws InvalidArgument if a window leaves the image.
PatchMatrix extract_patches(const GrayImage& image, const std::vector<Anchor>& anchors,
                            int side);

/// Patches whose intensity variance is below this are treated as homogeneous.
inline constexpr double kHomogeneousVariance = 1.0;

struct TrainingPatches {
  PatchMatrix patches;
  /// Set when the image holds fewer than the requested number of informative
  /// patches; `patches` then contains all of them.
  bool short_of_target = false;
};

/// Draws window anchors uniformly without replacement (seeded), drops
/// homogeneous windows, and stops once `target` patches survive.
TrainingPatches extract_training_patches(const GrayImage& image, int side, int target,
                                         std::uint64_t seed);

/// Salient windows of `ref` and the co-located windows of `dis`.
struct SalientPatches {
  PatchMatrix reference;
  PatchMatrix distorted;
  int valid_anchors = 0;  ///< N, the number of full windows in the image
};

/// Number of salient windows for `fraction` of `valid_anchors`: round, minimum 1.
int salient_count(int valid_anchors, double fraction);

/// All valid anchors ordered by descending entropy of `image`, ties broken by
/// row-major anchor order.
std::vector<Anchor> rank_anchors_by_entropy(const GrayImage& image, int side);

/// Selects the round(fraction*N) highest-entropy windows of `ref`. `dis` is
/// sampled at the same anchors. Columns are in descending-entropy order.
/// Throws DimensionMismatch if the images differ in size and InvalidArgument
/// if fraction is outside (0, 1].
SalientPatches select_salient_patches(const GrayImage& ref, const GrayImage& dis, int side,
                                      double fraction);

}  // namespace sparq
