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

#include "sparq/sparq.hpp"

#include <algorithm>
#include <cmath>

#include "sparq/error.hpp"
#include "sparq/omp.hpp"

namespace sparq {

void SparqParams::validate() const {
  if (!(c > 0.0)) throw InvalidArgument("c must be positive");
  if (!(salient_fraction > 0.0 && salient_fraction <= 1.0)) {
    throw InvalidArgument("salient fraction must lie in (0, 1]");
  }
  if (patch_side < 1) throw InvalidArgument("patch side must be positive");
  if (sparsity < 1) throw InvalidArgument("sparsity must be positive");
}

double alpha(const SparseCode& x_ref, const SparseCode& x_dis, double c) {
  const double value = (std::abs(dot(x_ref, x_dis)) + c) / (x_ref.norm() * x_dis.norm() + c);
  // Cauchy-Schwarz bounds this by 1; clamp the rounding excess.
  return std::min(value, 1.0);
}

double beta(const SparseCode& x_ref, const SparseCode& x_dis, double c) {
  const double value =
      1.0 - (distance(x_ref, x_dis) + c) / (x_ref.norm() + x_dis.norm() + c);
  return std::max(value, 0.0);
}

bool is_degenerate(const SparseCode& x_ref, const SparseCode& x_dis) {
  return x_ref.norm() == 0.0 && x_dis.norm() == 0.0;
}

double code_similarity(const SparseCode& x_ref, const SparseCode& x_dis, double c) {
  return alpha(x_ref, x_dis, c) * beta(x_ref, x_dis, c);
}

double patch_quality(const Eigen::Ref<const Eigen::VectorXd>& p_ref,
                     const Eigen::Ref<const Eigen::VectorXd>& p_dis, const Dictionary& dict,
                     const SparqParams& params) {
  params.validate();
  return code_similarity(omp(dict, p_ref, params.sparsity), omp(dict, p_dis, params.sparsity),
                         params.c);
}

double mean_of_leading(std::span<const double> scores, std::size_t count) {
  count = std::min(count, scores.size());
  if (count == 0) throw InvalidArgument("mean of an empty score list");
  // Neumaier summation.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = scores[i];
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + carry) / static_cast<double>(count);
}

RankedPatchScores score_salient_patches(const GrayImage& ref, const GrayImage& dis,
                                        const Dictionary& dict, const SparqParams& params) {
  params.validate();
  if (ref.rows() != dis.rows() || ref.cols() != dis.cols()) {
    throw DimensionMismatch("reference and distorted images differ in size");
  }
  if (dict.n() != params.patch_side * params.patch_side) {
    throw DimensionMismatch("dictionary atom length does not match the patch side");
  }

  RankedPatchScores out;
  out.factor = downsample_factor(ref);
  const GrayImage ref_small = downsample(ref, out.factor);
  const GrayImage dis_small = downsample(dis, out.factor);

  const SalientPatches salient = select_salient_patches(ref_small, dis_small, params.patch_side,
                                                        params.salient_fraction);
  out.valid_anchors = salient.valid_anchors;
  out.anchors = salient.reference.anchors;

  const auto codes_ref = batch_omp(dict, salient.reference.data, params.sparsity);
  const auto codes_dis = batch_omp(dict, salient.distorted.data, params.sparsity);
  const std::size_t q = codes_ref.size();
  out.scores.resize(q);
  out.degenerate.resize(q);
  for (std::size_t i = 0; i < q; ++i) {
    out.scores[i] = code_similarity(codes_ref[i], codes_dis[i], params.c);
    out.degenerate[i] = is_degenerate(codes_ref[i], codes_dis[i]) ? 1 : 0;
  }
  return out;
}

QualityResult sparq_index(const GrayImage& ref, const GrayImage& dis, const Dictionary& dict,
                          const SparqParams& params) {
  RankedPatchScores ranked = score_salient_patches(ref, dis, dict, params);
  QualityResult result;
  result.sparq = mean_of_leading(ranked.scores, ranked.scores.size());
  result.salient_count = static_cast<int>(ranked.scores.size());
  result.valid_anchors = ranked.valid_anchors;
  result.factor = ranked.factor;
  result.degenerate_patches =
      static_cast<int>(std::count(ranked.degenerate.begin(), ranked.degenerate.end(), 1));
  result.patch_scores = std::move(ranked.scores);
  result.anchors = std::move(ranked.anchors);
  return result;
}

double sparq_symmetric(const GrayImage& ref, const GrayImage& dis, const Dictionary& dict_ref,
                       const Dictionary& dict_dis, const SparqParams& params) {
  const double forward = sparq_index(ref, dis, dict_ref, params).sparq;
  const double backward = sparq_index(dis, ref, dict_dis, params).sparq;
  return 0.5 * (forward + backward);
}

}  // namespace sparq
