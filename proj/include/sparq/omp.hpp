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

#include <vector>

#include <Eigen/Core>

#include "sparq/dictionary.hpp"

namespace sparq {

/// Pursuit stops early once ||residual|| <= this * ||signal||.
inline constexpr double kOmpRelativeTolerance = 1e-6;

/// A candidate atom whose squared distance to the span of the already selected
/// atoms is below this is skipped as numerically dependent.
inline constexpr double kOmpSingularTolerance = 1e-10;

/// Orthogonal matching pursuit of a single signal with at most `tau` atoms.
///
/// Each step picks the atom with the largest |<atom, residual>| (lowest index
/// on ties), then refits all selected coefficients by least squares through a
/// progressively updated Cholesky factor of the selected Gram submatrix.
/// Throws InvalidArgument if tau < 1 or tau > n, DimensionMismatch if the
/// signal length is not n.
SparseCode omp(const Dictionary& dict, const Eigen::Ref<const Eigen::VectorXd>& signal,
               int tau);

/// Batch-OMP: same result as omp() column by column, but correlations are
/// updated through the precomputed Gram matrix instead of an explicit residual.
/// Columns are coded in parallel.
std::vector<SparseCode> batch_omp(const Dictionary& dict, const Eigen::MatrixXd& signals,
                                  int tau);

/// Phi * x. Throws DimensionMismatch if code.m != dict.m() and
/// InvalidArgument on an out-of-range support index.
Eigen::VectorXd reconstruct(const Dictionary& dict, const SparseCode& code);

}  // namespace sparq
