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

#include <cstdint>
#include <filesystem>

#include "sparq/error.hpp"
#include "sparq/ksvd.hpp"
#include "sparq/sparq.hpp"

namespace sparq::app {

enum class OutputFormat { kCsv, kJson };

/// Everything a command needs. Defaults: 11x11 patches, k = 3000 training
/// patches, m = 242 atoms, tau = 12, c = 0.01, 15% salient windows.
struct RunConfig {
  int patch_side = 11;
  int train_patches = 3000;
  int atoms = 242;
  int sparsity = 12;
  int iterations = 30;
  double early_stop = 0.0;
  double c = 0.01;
  double salient_fraction = 0.15;
  std::uint64_t seed = 0;
  int threads = 0;  ///< 0 uses every available core
  std::filesystem::path cache_dir = ".sparq-cache";
  OutputFormat format = OutputFormat::kCsv;
  bool with_psnr = false;

  SparqParams sparq_params() const {
    return SparqParams{c, sparsity, salient_fraction, patch_side};
  }
  LearnConfig learn_config() const {
    return LearnConfig{atoms, sparsity, iterations, seed, patch_side, early_stop};
  }

  /// Throws InvalidArgument on any inconsistent setting.
  void validate() const {
    sparq_params().validate();
    learn_config().validate();
    if (train_patches < atoms) {
      throw InvalidArgument("--train-patches must be at least --atoms");
    }
    if (threads < 0) throw InvalidArgument("--threads must be non-negative");
  }
};

}  // namespace sparq::app
