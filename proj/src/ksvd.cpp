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

#include "sparq/ksvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "sparq/error.hpp"
#include "sparq/omp.hpp"

namespace sparq {

namespace {

constexpr double kDuplicateCosine = 0.999;
constexpr double kPowerTolerance = 1e-10;
constexpr int kPowerMaxIterations = 200;

// Flip the atom so that its largest-magnitude entry is positive.
bool canonical_sign(Eigen::Ref<Eigen::VectorXd> atom) {
  Eigen::Index index = 0;
  atom.cwiseAbs().maxCoeff(&index);
  if (atom(index) < 0.0) {
    atom = -atom;
    return true;
  }
  return false;
}

bool is_duplicate(const Eigen::MatrixXd& atoms, int filled, const Eigen::VectorXd& candidate) {
  for (int i = 0; i < filled; ++i) {
    if (std::abs(atoms.col(i).dot(candidate)) > kDuplicateCosine) return true;
  }
  return false;
}

struct AtomUse {
  int column;
  int slot;  // position inside that column's sparse code
};

}  // namespace

Eigen::VectorXd leading_left_singular(const Eigen::MatrixXd& residual,
                                      const Eigen::VectorXd& start) {
  Eigen::VectorXd u = start;
  Eigen::VectorXd next(u.size());
  double previous = -1.0;
  for (int it = 0; it < kPowerMaxIterations; ++it) {
    // Matrix-free: cheaper than forming residual * residual^T for the warm
    // start's typical handful of iterations.
    next.noalias() = residual * (residual.transpose() * u);
    const double quotient = next.norm();
    if (quotient == 0.0) break;
    u = next / quotient;
    if (quotient - previous <= kPowerTolerance * quotient) break;
    previous = quotient;
  }
  return u;
}

void LearnConfig::validate() const {
  if (patch_side < 1) throw InvalidArgument("patch side must be positive");
  validate_for(patch_side * patch_side);
}

void LearnConfig::validate_for(int n) const {
  if (atoms <= n) throw InvalidArgument("dictionary must be overcomplete (atoms > n)");
  if (sparsity < 1 || sparsity >= atoms || sparsity > n) {
    throw InvalidArgument("sparsity must satisfy 1 <= tau <= n and tau < atoms");
  }
  if (iterations < 1) throw InvalidArgument("iterations must be positive");
  if (early_stop < 0.0) throw InvalidArgument("early stop tolerance must be non-negative");
}

Dictionary init_dictionary(const Eigen::MatrixXd& signals, int atoms, std::uint64_t seed) {
  const int n = static_cast<int>(signals.rows());
  if (atoms <= n) throw InvalidArgument("init_dictionary: atoms must exceed signal dimension");
  if (signals.cols() < atoms) {
    throw InvalidArgument("init_dictionary: fewer signals than atoms");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> order(static_cast<std::size_t>(signals.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  Eigen::MatrixXd dict(n, atoms);
  int filled = 0;
  for (int j : order) {
    if (filled == atoms) break;
    const double norm = signals.col(j).norm();
    if (norm == 0.0) continue;
    Eigen::VectorXd candidate = signals.col(j) / norm;
    if (is_duplicate(dict, filled, candidate)) continue;
    dict.col(filled++) = candidate;
  }
  if (filled == 0) throw InvalidArgument("init_dictionary: every training patch is zero");

  std::normal_distribution<double> gauss(0.0, 1.0);
  while (filled < atoms) {
    Eigen::VectorXd candidate(n);
    for (int r = 0; r < n; ++r) candidate(r) = gauss(rng);
    candidate.normalize();
    if (is_duplicate(dict, filled, candidate)) continue;
    dict.col(filled++) = candidate;
  }
  for (int i = 0; i < atoms; ++i) canonical_sign(dict.col(i));
  return Dictionary(std::move(dict));
}

Dictionary init_dictionary(const PatchMatrix& patches, int atoms, std::uint64_t seed) {
  return init_dictionary(patches.data, atoms, seed);
}

LearnResult learn(const PatchMatrix& patches, const LearnConfig& config) {
  config.validate();
  if (patches.side != config.patch_side) {
    throw DimensionMismatch("learn: patch side differs from configuration");
  }
  return learn(patches.data, config);
}

namespace {

struct LearnState {
  Eigen::MatrixXd atoms;
  std::vector<SparseCode> codes;
  Eigen::MatrixXd residual;
};

// Sparse-coding step. With keep_better, a column keeps its previous code
// unless the new one reconstructs it at least as well.
void adopt_codes(const Eigen::MatrixXd& data, const Dictionary& current,
                 const std::vector<SparseCode>& fresh, bool keep_better, LearnState& state) {
  const int k = static_cast<int>(data.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd r = data.col(j) - reconstruct(current, fresh[j]);
    if (!keep_better || r.squaredNorm() <= state.residual.col(j).squaredNorm()) {
      state.codes[j] = fresh[j];
      state.residual.col(j) = r;
    }
  }
}

// Dictionary-update step, sequential in atom index. Returns the number of
// dead atoms that were replaced.
int update_atoms(const Eigen::MatrixXd& data, LearnState& state) {
  const int n = static_cast<int>(data.rows());
  const int k = static_cast<int>(data.cols());
  const int m = static_cast<int>(state.atoms.cols());
  auto& atoms = state.atoms;
  auto& codes = state.codes;
  auto& residual = state.residual;

  std::vector<std::vector<AtomUse>> users(static_cast<std::size_t>(m));
  for (int j = 0; j < k; ++j) {
    const auto& code = codes[j];
    for (std::size_t s = 0; s < code.support.size(); ++s) {
      users[code.support[s]].push_back({j, static_cast<int>(s)});
    }
  }

  std::vector<char> reseeded_from(static_cast<std::size_t>(k), 0);
  int replaced = 0;
  for (int i = 0; i < m; ++i) {
    const auto& use = users[i];
    if (use.empty()) {
      // Dead atom: no code references it, so the residual is unaffected.
      int worst = -1;
      double worst_error = -1.0;
      for (int j = 0; j < k; ++j) {
        if (reseeded_from[j] || data.col(j).squaredNorm() == 0.0) continue;
        const double e = residual.col(j).squaredNorm();
        if (e > worst_error) {
          worst_error = e;
          worst = j;
        }
      }
      if (worst < 0) continue;
      reseeded_from[worst] = 1;
      atoms.col(i) = data.col(worst).normalized();
      canonical_sign(atoms.col(i));
      ++replaced;
      continue;
    }

    const int users_count = static_cast<int>(use.size());
    Eigen::MatrixXd restricted(n, users_count);
    for (int c = 0; c < users_count; ++c) {
      const AtomUse& u = use[c];
      restricted.col(c) = residual.col(u.column) + atoms.col(i) * codes[u.column].values[u.slot];
    }
    Eigen::VectorXd atom = leading_left_singular(restricted, atoms.col(i));
    Eigen::VectorXd row = restricted.transpose() * atom;
    if (canonical_sign(atom)) row = -row;

    atoms.col(i) = atom;
    for (int c = 0; c < users_count; ++c) {
      const AtomUse& u = use[c];
      codes[u.column].values[u.slot] = row(c);
      residual.col(u.column) = restricted.col(c) - atom * row(c);
    }
  }
  return replaced;
}

double rms_error(const Eigen::MatrixXd& residual) {
  return residual.norm() / std::sqrt(static_cast<double>(residual.rows()) * residual.cols());
}

}  // namespace

LearnResult learn(const Eigen::MatrixXd& data, const LearnConfig& config) {
  const int n = static_cast<int>(data.rows());
  const int k = static_cast<int>(data.cols());
  const int m = config.atoms;
  config.validate_for(n);
  if (k == 0) throw InvalidArgument("learn: empty training set");
  if (m > k) throw InvalidArgument("learn: more atoms than training signals");

  LearnState state{init_dictionary(data, m, config.seed).atoms(),
                   std::vector<SparseCode>(static_cast<std::size_t>(k)),
                   Eigen::MatrixXd(n, k)};
  TrainingReport report;

  for (int iteration = 0; iteration < config.iterations; ++iteration) {
    const Dictionary current(state.atoms);
    const std::vector<SparseCode> fresh = batch_omp(current, data, config.sparsity);

    // Fresh codes let atoms move freely, but greedy coding can be slightly
    // worse than the previous codes. If the round would raise the objective,
    // redo it keeping each column's better code, which cannot.
    LearnState trial = state;
    adopt_codes(data, current, fresh, false, trial);
    int replaced = update_atoms(data, trial);
    double error = rms_error(trial.residual);
    if (!report.rms_error.empty() && error > report.rms_error.back()) {
      trial = state;
      adopt_codes(data, current, fresh, true, trial);
      replaced = update_atoms(data, trial);
      error = rms_error(trial.residual);
    }
    state = std::move(trial);

    const double previous = report.rms_error.empty() ? 0.0 : report.rms_error.back();
    report.rms_error.push_back(error);
    report.replaced_atoms.push_back(replaced);

    if (config.early_stop > 0.0 && iteration > 0 && previous > 0.0 &&
        (previous - error) / previous < config.early_stop) {
      break;
    }
  }
  return LearnResult{Dictionary(std::move(state.atoms)), std::move(report)};
}

}  // namespace sparq
