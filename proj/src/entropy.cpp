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

#include "sparq/entropy.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>
#include <cmath>

#include "sparq/error.hpp"

namespace sparq {

namespace {

// Entropy of a histogram over n samples is (n log2 n - sum_f f log2 f) / n.
// Writing every count f as a product of primes turns that numerator into
// sum_p D_p log2 p with integer D_p. Logs of distinct primes are rationally
// independent, so two windows have equal entropy exactly when their D vectors
// agree, and evaluating the sum in a fixed prime order then yields
// bit-identical doubles. Ranking ties are therefore real ties.
class EntropyTable {
 public:
  explicit EntropyTable(int n) : n_(n) {
    for (int p = 2; p <= std::max(n, 2); ++p) {
      bool prime = true;
      for (int q : primes_) {
        if (q * q > p) break;
        if (p % q == 0) {
          prime = false;
          break;
        }
      }
      if (prime) primes_.push_back(p);
    }
    log_prime_.reserve(primes_.size());
    for (int p : primes_) log_prime_.push_back(std::log2(static_cast<double>(p)));
    // factor_[f] lists (prime index, f * multiplicity of p in f).
    factor_.resize(static_cast<std::size_t>(n) + 1);
    for (int f = 2; f <= n; ++f) {
      int rest = f;
      for (std::size_t i = 0; i < primes_.size() && rest > 1; ++i) {
        int e = 0;
        while (rest % primes_[i] == 0) {
          rest /= primes_[i];
          ++e;
        }
        if (e > 0) factor_[f].push_back({static_cast<int>(i), f * e});
      }
    }
  }

  double entropy(const std::array<int, 256>& histogram) const {
    std::vector<long long> d(primes_.size(), 0);
    for (const auto& [i, fe] : factor_[n_]) d[i] += static_cast<long long>(fe);
    for (int count : histogram) {
      for (const auto& [i, fe] : factor_[count]) d[i] -= fe;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] != 0) sum += static_cast<double>(d[i]) * log_prime_[i];
    }
    return sum / n_;
  }

 private:
  int n_;
  std::vector<int> primes_;
  std::vector<double> log_prime_;
  std::vector<std::vector<std::pair<int, int>>> factor_;
};

}  // namespace

double sample_entropy(std::span<const std::uint8_t> samples) {
  if (samples.empty()) return 0.0;
  const int n = static_cast<int>(samples.size());
  std::array<int, 256> histogram{};
  for (auto v : samples) ++histogram[v];
  return EntropyTable(n).entropy(histogram);
}

EntropyMap local_entropy_map(const GrayImage& image, int patch_side) {
  if (patch_side < 1 || patch_side > image.rows() || patch_side > image.cols()) {
    throw InvalidArgument("local_entropy_map: patch larger than image");
  }
  const int n = patch_side * patch_side;
  const EntropyTable table(n);

  EntropyMap map;
  map.rows = image.rows() - patch_side + 1;
  map.cols = image.cols() - patch_side + 1;
  map.values.resize(static_cast<std::size_t>(map.rows) * map.cols);

  // Each anchor row keeps its own sliding histogram, so rows are independent.
#pragma omp parallel for schedule(static)
  for (int r = 0; r < map.rows; ++r) {
    std::array<int, 256> histogram{};
    for (int dr = 0; dr < patch_side; ++dr) {
      for (int dc = 0; dc < patch_side; ++dc) ++histogram[image.at(r + dr, dc)];
    }
    const std::size_t base = static_cast<std::size_t>(r) * map.cols;
    map.values[base] = table.entropy(histogram);
    for (int c = 1; c < map.cols; ++c) {
      for (int dr = 0; dr < patch_side; ++dr) {
        --histogram[image.at(r + dr, c - 1)];
        ++histogram[image.at(r + dr, c + patch_side - 1)];
      }
      map.values[base + c] = table.entropy(histogram);
    }
  }
  return map;
}

}  // namespace sparq
