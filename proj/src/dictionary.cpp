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

#include "sparq/dictionary.hpp"

#include <cmath>
#include <string>

#include "sparq/error.hpp"

namespace sparq {

Dictionary::Dictionary(Eigen::MatrixXd atoms) : atoms_(std::move(atoms)) {
  if (atoms_.rows() < 1 || atoms_.cols() <= atoms_.rows()) {
    throw InvariantViolation("dictionary must be overcomplete (m > n)");
  }
  for (Eigen::Index j = 0; j < atoms_.cols(); ++j) {
    const double norm = atoms_.col(j).norm();
    if (norm == 0.0) {
      throw InvariantViolation("dictionary atom " + std::to_string(j) + " is zero");
    }
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
      throw InvariantViolation("dictionary atom " + std::to_string(j) + " is not unit norm");
    }
  }
  gram_ = atoms_.transpose() * atoms_;
}

Dictionary Dictionary::normalized(Eigen::MatrixXd atoms) {
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    const double norm = atoms.col(j).norm();
    if (norm == 0.0) {
      throw InvariantViolation("dictionary atom " + std::to_string(j) + " is zero");
    }
    atoms.col(j) /= norm;
  }
  return Dictionary(std::move(atoms));
}

Eigen::VectorXd SparseCode::dense() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  for (std::size_t k = 0; k < support.size(); ++k) x(support[k]) = values[k];
  return x;
}

double SparseCode::norm() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

double dot(const SparseCode& a, const SparseCode& b) {
  if (a.m != b.m) throw DimensionMismatch("sparse codes have different ambient dimension");
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.support.size() && j < b.support.size()) {
    if (a.support[i] < b.support[j]) {
      ++i;
    } else if (b.support[j] < a.support[i]) {
      ++j;
    } else {
      sum += a.values[i++] * b.values[j++];
    }
  }
  return sum;
}

double distance(const SparseCode& a, const SparseCode& b) {
  if (a.m != b.m) throw DimensionMismatch("sparse codes have different ambient dimension");
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.support.size() || j < b.support.size()) {
    double d;
    if (j == b.support.size() || (i < a.support.size() && a.support[i] < b.support[j])) {
      d = a.values[i++];
    } else if (i == a.support.size() || b.support[j] < a.support[i]) {
      d = -b.values[j++];
    } else {
      d = a.values[i++] - b.values[j++];
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace sparq
