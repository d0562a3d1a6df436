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

#include "sparq/omp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "sparq/error.hpp"

namespace sparq {

namespace {

void check_tau(const Dictionary& dict, int tau) {
  if (tau < 1) throw InvalidArgument("omp: tau must be positive");
  if (tau > dict.n()) throw InvalidArgument("omp: tau must not exceed the signal dimension");
}

// Least-squares state over the selected atoms: lower Cholesky factor L of the
// selected Gram submatrix and the right-hand side Phi_I^T x.
class ActiveSet {
 public:
  explicit ActiveSet(int capacity) : factor_(capacity, capacity), rhs_(capacity) {}

  int size() const { return static_cast<int>(atoms_.size()); }
  const std::vector<int>& atoms() const { return atoms_; }

  // `cross` holds <phi_i, phi_atom> for the selected atoms in selection order.
  // Returns false, leaving the state untouched, when the atom is numerically
  // dependent on the current selection.
  bool try_add(int atom, const Eigen::Ref<const Eigen::VectorXd>& cross, double self,
               double rhs) {
    const int k = size();
    if (k == 0) {
      factor_(0, 0) = std::sqrt(self);
    } else {
      Eigen::VectorXd w =
          factor_.topLeftCorner(k, k).triangularView<Eigen::Lower>().solve(cross.head(k));
      const double d = self - w.squaredNorm();
      if (d <= kOmpSingularTolerance) return false;
      factor_.block(k, 0, 1, k) = w.transpose();
      factor_(k, k) = std::sqrt(d);
    }
    rhs_(k) = rhs;
    atoms_.push_back(atom);
    return true;
  }

  Eigen::VectorXd solve() const {
    const int k = size();
    const auto lower = factor_.topLeftCorner(k, k).triangularView<Eigen::Lower>();
    Eigen::VectorXd y = lower.solve(rhs_.head(k));
    return lower.transpose().solve(y);
  }

  const Eigen::VectorXd& rhs() const { return rhs_; }

 private:
  Eigen::MatrixXd factor_;
  Eigen::VectorXd rhs_;
  std::vector<int> atoms_;
};

// Largest |corr_j| over eligible atoms, lowest index on ties; -1 if none.
int pick_atom(const Eigen::VectorXd& corr, const std::vector<char>& blocked, double floor) {
  int best = -1;
  double best_abs = floor;
  for (Eigen::Index j = 0; j < corr.size(); ++j) {
    if (blocked[j]) continue;
    const double a = std::abs(corr(j));
    if (a > best_abs) {
      best_abs = a;
      best = static_cast<int>(j);
    }
  }
  return best;
}

SparseCode to_code(int m, const std::vector<int>& atoms, const Eigen::VectorXd& coeffs) {
  std::vector<int> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return atoms[a] < atoms[b]; });
  SparseCode code;
  code.m = m;
  code.support.reserve(atoms.size());
  code.values.reserve(atoms.size());
  for (int k : order) {
    code.support.push_back(atoms[k]);
    code.values.push_back(coeffs(k));
  }
  return code;
}

// Gram-driven pursuit of one column given alpha0 = Phi^T x and ||x||^2.
SparseCode batch_column(const Dictionary& dict, const Eigen::Ref<const Eigen::VectorXd>& alpha0,
                        double energy, int tau) {
  const int m = dict.m();
  if (energy == 0.0) return SparseCode{m, {}, {}};
  const Eigen::MatrixXd& gram = dict.gram();
  const double stop_sq = kOmpRelativeTolerance * kOmpRelativeTolerance * energy;
  const double floor = 1e-14 * std::sqrt(energy);

  ActiveSet active(tau);
  std::vector<char> blocked(static_cast<std::size_t>(m), 0);
  Eigen::VectorXd alpha = alpha0;
  Eigen::VectorXd cross(tau);
  Eigen::VectorXd gamma;

  while (active.size() < tau) {
    const int j = pick_atom(alpha, blocked, floor);
    if (j < 0) break;
    blocked[j] = 1;
    for (int k = 0; k < active.size(); ++k) cross(k) = gram(active.atoms()[k], j);
    if (!active.try_add(j, cross, gram(j, j), alpha0(j))) continue;

    gamma = active.solve();
    alpha = alpha0;
    for (int k = 0; k < active.size(); ++k) alpha -= gamma(k) * gram.col(active.atoms()[k]);
    const double residual_sq = energy - gamma.dot(active.rhs().head(active.size()));
    if (residual_sq <= stop_sq) break;
  }
  if (active.size() == 0) return SparseCode{m, {}, {}};
  return to_code(m, active.atoms(), gamma);
}

}  // namespace

SparseCode omp(const Dictionary& dict, const Eigen::Ref<const Eigen::VectorXd>& signal,
               int tau) {
  check_tau(dict, tau);
  if (signal.size() != dict.n()) throw DimensionMismatch("omp: signal length differs from n");

  const int m = dict.m();
  const double signal_norm = signal.norm();
  if (signal_norm == 0.0) return SparseCode{m, {}, {}};
  const double stop = kOmpRelativeTolerance * signal_norm;
  const double floor = 1e-14 * signal_norm;
  const Eigen::MatrixXd& atoms = dict.atoms();

  ActiveSet active(tau);
  std::vector<char> blocked(static_cast<std::size_t>(m), 0);
  Eigen::VectorXd residual = signal;
  Eigen::VectorXd cross(tau);
  Eigen::VectorXd gamma;

  while (active.size() < tau) {
    const Eigen::VectorXd corr = atoms.transpose() * residual;
    const int j = pick_atom(corr, blocked, floor);
    if (j < 0) break;
    blocked[j] = 1;
    for (int k = 0; k < active.size(); ++k) {
      cross(k) = atoms.col(active.atoms()[k]).dot(atoms.col(j));
    }
    if (!active.try_add(j, cross, atoms.col(j).squaredNorm(), atoms.col(j).dot(signal))) {
      continue;
    }

    gamma = active.solve();
    residual = signal;
    for (int k = 0; k < active.size(); ++k) residual -= gamma(k) * atoms.col(active.atoms()[k]);
    if (residual.norm() <= stop) break;
  }
  if (active.size() == 0) return SparseCode{m, {}, {}};
  return to_code(m, active.atoms(), gamma);
}

std::vector<SparseCode> batch_omp(const Dictionary& dict, const Eigen::MatrixXd& signals,
                                  int tau) {
  check_tau(dict, tau);
  if (signals.rows() != dict.n()) {
    throw DimensionMismatch("batch_omp: signal length differs from n");
  }
  const Eigen::MatrixXd alpha0 = dict.atoms().transpose() * signals;
  const Eigen::Index count = signals.cols();
  std::vector<SparseCode> codes(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 64)
  for (Eigen::Index s = 0; s < count; ++s) {
    codes[static_cast<std::size_t>(s)] =
        batch_column(dict, alpha0.col(s), signals.col(s).squaredNorm(), tau);
  }
  return codes;
}

Eigen::VectorXd reconstruct(const Dictionary& dict, const SparseCode& code) {
  if (code.m != dict.m()) throw DimensionMismatch("reconstruct: code/dictionary size mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dict.n());
  for (std::size_t k = 0; k < code.support.size(); ++k) {
    const int i = code.support[k];
    if (i < 0 || i >= dict.m()) throw InvalidArgument("reconstruct: atom index out of range");
    out += code.values[k] * dict.atom(i);
  }
  return out;
}

}  // namespace sparq
