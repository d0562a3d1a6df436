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

#include "sparq/evaluation.hpp"

#include <cmath>
#include <vector>

namespace sparq {

EvalStats evaluate(const ScorePairs& pairs) {
  EvalStats stats;
  stats.count = pairs.size();
  stats.srocc = srocc(pairs);
  stats.krocc = krocc(pairs);
  stats.fit = fit_logistic(pairs);

  std::vector<double> mapped(pairs.size());
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    mapped[i] = stats.fit(pairs.objective[i]);
    const double d = mapped[i] - pairs.subjective[i];
    abs_sum += std::abs(d);
    sq_sum += d * d;
  }
  const double n = static_cast<double>(pairs.size());
  stats.mae = abs_sum / n;
  stats.rms = std::sqrt(sq_sum / n);
  stats.cc = pearson(mapped, pairs.subjective);
  return stats;
}

}  // namespace sparq
