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

#include "sparq/dictionary.hpp"
#include "sparq/patches.hpp"

namespace sparq {

struct LearnConfig {
  int atoms = 242;       ///< m
  int sparsity = 12;     ///< tau
  int iterations = 30;
  std::uint64_t seed = 0;
  int patch_side = 11;
  /// Stop once the relative error improvement of an iteration falls below
  /// this; 0 always runs every iteration.
  double early_stop = 0.0;

  /// Throws InvalidArgument unless m > side^2, tau < m, tau <= side^2 and
  /// iterations >= 1.
  void validate() const;
  /// Same checks with n in place of patch_side^2, for raw signal matrices.
  void validate_for(int n) const;
};

struct TrainingReport {
  /// ||P - Phi X||_F / sqrt(n k) after each iteration's dictionary update.
  std::vector<double> rms_error;
  /// Atoms with no users that were re-seeded in each iteration.
  std::vector<int> replaced_atoms;
};

/// Picks `atoms` distinct training columns at random (seeded) and normalizes
/// them. Columns within |cosine| > 0.999 of an already chosen atom are skipped;
/// if the data run out of distinct directions the remainder is filled with
/// seeded random unit vectors. Throws InvalidArgument if patches.count() < atoms
/// or every patch is zero.
Dictionary init_dictionary(const Eigen::MatrixXd& signals, int atoms, std::uint64_t seed);
Dictionary init_dictionary(const PatchMatrix& patches, int atoms, std::uint64_t seed);

/// Leading left singular vector of `residual` by power iteration on
/// residual * residual^T, warm-started from the unit vector `start`. The
/// iteration never lowers ||residual^T u||, so the rank-one fit it yields is at
/// least as good as the one through `start`. Stops once that norm settles to a
/// relative 1e-10 or after 200 steps.
Eigen::VectorXd leading_left_singular(const Eigen::MatrixXd& residual,
                                      const Eigen::VectorXd& start);

struct LearnResult {
  Dictionary dictionary;
  TrainingReport report;
};

/// K-SVD: alternate Batch-OMP coding of every patch with a sequential sweep of
/// rank-one atom updates. Each atom with users is replaced by the leading left
/// singular vector of its restricted residual E_i and its coefficient row by
/// sigma_1 times the leading right singular vector; unused atoms are replaced by
/// the worst-represented patch. Each round adopts the fresh codes; if that
/// round would raise the error, it is redone with every patch keeping its
/// previous code unless the fresh one is no worse, so the reported error
/// never increases.
/// Throws DimensionMismatch if patches.side differs from config.patch_side.
LearnResult learn(const PatchMatrix& patches, const LearnConfig& config);
/// Same algorithm on arbitrary column signals; config.patch_side is ignored.
LearnResult learn(const Eigen::MatrixXd& signals, const LearnConfig& config);

}  // namespace sparq
