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

#include <span>
#include <vector>

#include <Eigen/Core>

#include "sparq/dictionary.hpp"
#include "sparq/image.hpp"
#include "sparq/patches.hpp"

namespace sparq {

struct SparqParams {
  double c = 0.01;                ///< stabilizing constant of alpha and beta
  int sparsity = 12;              ///< tau used when coding patches
  double salient_fraction = 0.15; ///< q / N
  int patch_side = 11;

  /// Throws InvalidArgument unless c > 0, 0 < fraction <= 1, side >= 1, tau >= 1.
  void validate() const;
};

/// Direction agreement of two codes: (|x_r . x_d| + c) / (||x_r|| ||x_d|| + c),
/// in (0, 1].
double alpha(const SparseCode& x_ref, const SparseCode& x_dis, double c);

/// Magnitude agreement: 1 - (||x_r - x_d|| + c) / (||x_r|| + ||x_d|| + c), in
/// [0, 1). Two zero codes give 0.
double beta(const SparseCode& x_ref, const SparseCode& x_dis, double c);

/// True when both codes are zero (the patch carries no coded structure).
bool is_degenerate(const SparseCode& x_ref, const SparseCode& x_dis);

/// alpha * beta of the two codes.
double code_similarity(const SparseCode& x_ref, const SparseCode& x_dis, double c);

/// Codes both patches with OMP over `dict` and returns alpha * beta.
double patch_quality(const Eigen::Ref<const Eigen::VectorXd>& p_ref,
                     const Eigen::Ref<const Eigen::VectorXd>& p_dis, const Dictionary& dict,
                     const SparqParams& params);

/// Per-patch scores over the salient windows of the reference, best-ranked
/// (highest entropy) first. Any prefix of length q equals the selection for a
/// smaller salient fraction.
struct RankedPatchScores {
  std::vector<double> scores;
  std::vector<Anchor> anchors;   ///< in the downsampled image
  std::vector<char> degenerate;  ///< both codes zero
  int valid_anchors = 0;         ///< N
  int factor = 1;                ///< downsampling factor F applied to both images
};

/// Downsamples both images by F computed from `ref`, ranks the reference
/// windows by entropy, keeps the top round(fraction * N), codes both sides with
/// Batch-OMP and scores every pair.
/// Throws DimensionMismatch on differing image sizes or when dict.n() is not
/// patch_side^2.
RankedPatchScores score_salient_patches(const GrayImage& ref, const GrayImage& dis,
                                        const Dictionary& dict, const SparqParams& params);

/// Compensated mean of the first `count` scores.
double mean_of_leading(std::span<const double> scores, std::size_t count);

struct QualityResult {
  double sparq = 0.0;
  std::vector<double> patch_scores;
  std::vector<Anchor> anchors;
  int salient_count = 0;       ///< q
  int valid_anchors = 0;       ///< N
  int factor = 1;              ///< F
  int degenerate_patches = 0;
};

/// Mean of alpha * beta over the q salient patch pairs.
QualityResult sparq_index(const GrayImage& ref, const GrayImage& dis, const Dictionary& dict,
                          const SparqParams& params);

/// Average of sparq_index(ref, dis, dict_ref) and sparq_index(dis, ref, dict_dis).
double sparq_symmetric(const GrayImage& ref, const GrayImage& dis, const Dictionary& dict_ref,
                       const Dictionary& dict_dis, const SparqParams& params);

/// PSNR reported for identical images.
inline constexpr double kPsnrCap = 100.0;

/// 10 log10(255^2 / MSE) in dB, capped at kPsnrCap.
/// Throws DimensionMismatch on differing sizes.
double psnr(const GrayImage& ref, const GrayImage& dis);

}  // namespace sparq
