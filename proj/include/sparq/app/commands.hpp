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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sparq/app/dictionary_cache.hpp"
#include "sparq/app/manifest.hpp"
#include "sparq/app/run_config.hpp"
#include "sparq/evaluation.hpp"

namespace sparq::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitPartial = 3,
};

/// Outcome of scoring one manifest record.
struct RecordResult {
  std::optional<double> sparq;
  std::optional<double> psnr;
  std::string error;  ///< empty on success
};

/// Scores every record (in parallel), training reference dictionaries through
/// `cache` as needed. Failures are recorded per record.
std::vector<RecordResult> score_records(const DatasetManifest& manifest,
                                        const RunConfig& config, DictionaryCache& cache);

/// Label of the pool that spans the whole manifest.
inline constexpr const char* kOverallGroup = "overall";

struct GroupStats {
  std::string metric;  ///< "sparq" or "psnr"
  std::string group;   ///< kOverallGroup or a distortion tag
  std::size_t count = 0;
  std::optional<EvalStats> stats;
  std::string error;
};

/// Evaluation over all successfully scored records and per distortion tag
/// (tags in lexicographic order). Subjective scores are negated for manifests
/// whose scale is lower-is-better, so correlations come out positive.
std::vector<GroupStats> evaluate_groups(const DatasetManifest& manifest,
                                        const std::vector<RecordResult>& results,
                                        bool with_psnr);

struct SweepPoint {
  double fraction = 0.0;
  std::size_t count = 0;
  std::optional<double> srocc;
  std::string error;
};

/// SPARQ SROCC against the subjective scores at each salient fraction.
/// Patch scores are computed once at the largest fraction and averaged over
/// the leading prefix for each smaller one. `fractions` must already be
/// validated and de-duplicated; `failed_records` receives the number of
/// records that could not be scored.
std::vector<SweepPoint> sweep_saliency(const DatasetManifest& manifest,
                                       const std::vector<double>& fractions,
                                       const RunConfig& config, DictionaryCache& cache,
                                       std::size_t& failed_records);

struct TrainOptions {
  std::vector<std::filesystem::path> images;
  std::optional<std::filesystem::path> manifest;
};

struct ScoreOptions {
  std::filesystem::path reference;
  std::filesystem::path distorted;
  std::optional<std::filesystem::path> dictionary;   ///< use this file instead of the cache
  std::optional<std::filesystem::path> entropy_map;  ///< debug PGM dump
};

struct EvaluateOptions {
  std::filesystem::path manifest;
  std::optional<bool> higher_is_better;  ///< overrides the manifest polarity
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> scores_output;
};

struct SweepOptions {
  std::filesystem::path manifest;
  std::vector<double> fractions;
  std::optional<bool> higher_is_better;
  std::optional<std::filesystem::path> output;
};

int cmd_train(const TrainOptions& options, const RunConfig& config, std::ostream& out,
              std::ostream& err);
int cmd_score(const ScoreOptions& options, const RunConfig& config, std::ostream& out,
              std::ostream& err);
int cmd_evaluate(const EvaluateOptions& options, const RunConfig& config, std::ostream& out,
                 std::ostream& err);
int cmd_sweep(const SweepOptions& options, const RunConfig& config, std::ostream& out,
              std::ostream& err);

}  // namespace sparq::app
