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

namespace sparq {

/// Objective scores paired with subjective ratings (MOS or DMOS).
struct ScorePairs {
  std::vector<double> objective;
  std::vector<double> subjective;

  std::size_t size() const { return objective.size(); }

  /// Throws InvalidArgument on unequal lengths, NaN/inf entries, or fewer than
  /// `min_size` pairs.
  void validate(std::size_t min_size = 3) const;
};

/// Fractional (1-based, tie-averaged) ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson linear correlation. Throws UndefinedCorrelation if either list is
/// constant, InvalidArgument on unequal lengths.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rank-order correlation: Pearson correlation of average ranks.
double srocc(const ScorePairs& pairs);

/// Kendall tau-b, computed in O(n log n) with Knight's merge-sort algorithm.
/// Throws UndefinedCorrelation when either list is entirely tied.
double krocc(const ScorePairs& pairs);

}  // namespace sparq
