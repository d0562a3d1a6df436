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

#include "sparq/correlation.hpp"
#include "sparq/logistic.hpp"

namespace sparq {

/// Agreement of objective scores with subjective ratings.
struct EvalStats {
  double srocc = 0.0;  ///< on raw scores
  double krocc = 0.0;  ///< on raw scores
  double cc = 0.0;     ///< Pearson of Q(objective) against subjective
  double mae = 0.0;    ///< mean |Q(objective) - subjective|
  double rms = 0.0;    ///< root mean square of Q(objective) - subjective
  LogisticFit fit;
  std::size_t count = 0;
};

/// Rank correlations on the raw pairs; accuracy metrics after the logistic
/// mapping. Errors from srocc, krocc and fit_logistic propagate.
EvalStats evaluate(const ScorePairs& pairs);

}  // namespace sparq
