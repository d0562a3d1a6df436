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

namespace sparq {

/// Overcomplete set of unit-norm atoms stored as the columns of an n x m
/// matrix (m > n). Immutable; the Gram matrix is computed once on construction.
class Dictionary {
 public:
  /// Column norms must be within this of 1.
  static constexpr double kNormTolerance = 1e-9;

  /// Throws InvariantViolation unless m > n, no column is zero and every
  /// column has unit norm.
  explicit Dictionary(Eigen::MatrixXd atoms);

  /// Normalizes every column first. Throws InvariantViolation on a zero column.
  static Dictionary normalized(Eigen::MatrixXd atoms);

  int n() const { return static_cast<int>(atoms_.rows()); }
  int m() const { return static_cast<int>(atoms_.cols()); }
  const Eigen::MatrixXd& atoms() const { return atoms_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  auto atom(int i) const { return atoms_.col(i); }

 private:
  Eigen::MatrixXd atoms_;
  Eigen::MatrixXd gram_;
};

/// Sparse coefficient vector over a dictionary with `m` atoms.
struct SparseCode {
  int m = 0;
  std::vector<int> support;     ///< ascending, distinct atom indices
  std::vector<double> values;   ///< aligned with support

  std::size_t size() const { return support.size(); }
  bool empty() const { return support.empty(); }

  Eigen::VectorXd dense() const;
  double norm() const;
};

/// x_a^T x_b over the shared support.
double dot(const SparseCode& a, const SparseCode& b);

/// ||x_a - x_b||_2.
double distance(const SparseCode& a, const SparseCode& b);

}  // namespace sparq
