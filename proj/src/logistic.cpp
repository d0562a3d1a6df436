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

#include "sparq/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "sparq/error.hpp"

namespace sparq {

namespace {

using Params = std::array<double, 5>;

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
using GslVector = std::unique_ptr<gsl_vector, VectorDeleter>;
using GslMinimizer = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;

double map_score(const Params& g, double s) {
  return g[0] * logistic(g[1], s - g[2]) + g[3] * s + g[4];
}

double rms_of(const Params& g, std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = map_score(g, x[i]) - y[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(x.size()));
}

struct Problem {
  std::span<const double> x;
  std::span<const double> y;
};

double objective(const gsl_vector* v, void* data) {
  const auto* problem = static_cast<const Problem*>(data);
  Params g;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = gsl_vector_get(v, i);
  const double value = rms_of(g, problem->x, problem->y);
  return std::isfinite(value) ? value : GSL_POSINF;
}

struct SearchResult {
  Params params;
  double value;
  bool converged;
  int iterations;
};

// Nelder-Mead from `start`; after each convergence the simplex is rebuilt
// around the best point until a restart no longer improves it.
SearchResult nelder_mead(const Problem& problem, const Params& start, int budget) {
  gsl_multimin_function fn;
  fn.n = start.size();
  fn.f = &objective;
  fn.params = const_cast<Problem*>(&problem);

  GslVector x(gsl_vector_alloc(fn.n));
  GslVector step(gsl_vector_alloc(fn.n));
  GslMinimizer minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, fn.n));

  SearchResult best{start, rms_of(start, problem.x, problem.y), false, 0};
  if (!std::isfinite(best.value)) best.value = GSL_POSINF;
  double step_size = 0.5;
  while (best.iterations < budget) {
    for (std::size_t i = 0; i < fn.n; ++i) gsl_vector_set(x.get(), i, best.params[i]);
    gsl_vector_set_all(step.get(), step_size);
    gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get());

    bool settled = false;
    while (best.iterations < budget) {
      ++best.iterations;
      if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
      const double size = gsl_multimin_fminimizer_size(minimizer.get());
      if (gsl_multimin_test_size(size, 1e-12) == GSL_SUCCESS) {
        settled = true;
        break;
      }
    }
    const double value = minimizer->fval;
    const double previous = best.value;
    if (value < best.value) {
      for (std::size_t i = 0; i < fn.n; ++i) {
        best.params[i] = gsl_vector_get(minimizer->x, i);
      }
      best.value = value;
    }
    if (!settled) break;
    if (previous - value <= 1e-12 * std::max(1.0, previous)) {
      best.converged = true;
      break;
    }
    step_size = std::max(step_size * 0.5, 1e-3);
  }
  return best;
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

double logistic(double sigma, double s) { return 0.5 - 1.0 / (1.0 + std::exp(sigma * s)); }

double LogisticFit::operator()(double s) const { return map_score(gamma, s); }

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw InvalidArgument("fit_affine: bad input");
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  AffineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = mean_y - fit.slope * mean_x;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = fit.slope * x[i] + fit.intercept - y[i];
    sse += d * d;
  }
  fit.rms = std::sqrt(sse / n);
  return fit;
}

LogisticFit fit_logistic(const ScorePairs& pairs) {
  pairs.validate(5);
  const auto& s = pairs.objective;
  const auto& y = pairs.subjective;
  const double n = static_cast<double>(s.size());

  const double mean_s = std::accumulate(s.begin(), s.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double var_s = 0.0;
  double var_y = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    var_s += (s[i] - mean_s) * (s[i] - mean_s);
    var_y += (y[i] - mean_y) * (y[i] - mean_y);
  }
  if (var_s == 0.0) throw InvalidArgument("fit_logistic: objective scores are all equal");
  const double sd_s = std::sqrt(var_s / n);
  const double sd_y = std::sqrt(var_y / n);

  const AffineFit affine = fit_affine(s, y);
  const Params affine_params{0.0, 1.0, median(s), affine.slope, affine.intercept};

  LogisticFit fit;
  fit.gamma = affine_params;
  fit.rms = rms_of(affine_params, s, y);
  fit.converged = true;
  if (sd_y == 0.0) return fit;

  // Search on standardized scores so the starting simplex fits any scale.
  std::vector<double> zs(s.size());
  std::vector<double> zy(y.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    zs[i] = (s[i] - mean_s) / sd_s;
    zy[i] = (y[i] - mean_y) / sd_y;
  }
  const Problem problem{zs, zy};
  const auto [lo, hi] = std::minmax_element(zy.begin(), zy.end());
  const Params logistic_start{*hi - *lo, 1.0, median(zs), 0.0, 0.0};
  const Params affine_start{0.0, 1.0, median(zs), affine.slope * sd_s / sd_y,
                            (affine.intercept + affine.slope * mean_s - mean_y) / sd_y};

  const auto to_original = [&](const Params& a) {
    return Params{sd_y * a[0], a[1] / sd_s, mean_s + sd_s * a[2], sd_y * a[3] / sd_s,
                  sd_y * (a[4] - a[3] * mean_s / sd_s) + mean_y};
  };

  for (const Params& start : {logistic_start, affine_start}) {
    const SearchResult result = nelder_mead(problem, start, kLogisticIterationBudget);
    const Params gamma = to_original(result.params);
    const double rms = rms_of(gamma, s, y);
    fit.iterations += result.iterations;
    if (std::isfinite(rms) && rms < fit.rms) {
      fit.gamma = gamma;
      fit.rms = rms;
      fit.converged = result.converged;
    }
  }
  return fit;
}

}  // namespace sparq
