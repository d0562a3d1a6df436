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

#include <array>
#include <span>

#include "sparq/correlation.hpp"

namespace sparq {

/// 1/2 - 1/(1 + exp(sigma * s)).
double logistic(double sigma, double s);

/// Five-parameter monotone mapping of objective scores onto the subjective
/// scale: Q(s) = g1 * logistic(g2, s - g3) + g4 * s + g5.
struct LogisticFit {
  std::array<double, 5> gamma{};
  bool converged = false;
  double rms = 0.0;  ///< RMS of Q(objective) - subjective on the fitted pairs
  int iterations = 0;

  double operator()(double s) const;
};

/// Ordinary least-squares line y = slope * x + intercept.
struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

/// Nelder-Mead iteration budget of a single fit.
inline constexpr int kLogisticIterationBudget = 2000;

/// Minimizes the RMS of Q(objective) - subjective over g1..g5 with Nelder-Mead.
/// Scores are standardized internally and the parameters mapped back. The
/// search runs from two starts (a logistic guess and the affine fit) and keeps
/// the best, so the result is never worse than the affine least-squares line.
/// Throws InvalidArgument with fewer than 5 pairs or constant objective scores.
LogisticFit fit_logistic(const ScorePairs& pairs);

}  // namespace sparq
