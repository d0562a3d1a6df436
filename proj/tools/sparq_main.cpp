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

// Command-line entry point: train / score / evaluate / sweep.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "sparq/app/commands.hpp"

namespace {

using sparq::app::OutputFormat;
using sparq::app::RunConfig;

void add_common_options(CLI::App& cmd, RunConfig& config, std::string& format) {
  cmd.add_option("--patch-side", config.patch_side, "patch side length in pixels")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--train-patches", config.train_patches, "training patches per reference")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--atoms", config.atoms, "dictionary atoms")->check(CLI::PositiveNumber);
  cmd.add_option("--sparsity", config.sparsity, "non-zero coefficients per patch")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--iterations", config.iterations, "K-SVD iterations")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--early-stop", config.early_stop,
                 "stop training when the relative RMS drop falls below this (0 disables)")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--c", config.c, "stabilizing constant")->check(CLI::PositiveNumber);
  cmd.add_option("--salient-fraction", config.salient_fraction,
                 "fraction of highest-entropy windows scored")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--seed", config.seed, "training RNG seed");
  cmd.add_option("--threads", config.threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--cache-dir", config.cache_dir, "dictionary cache directory");
  cmd.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.add_flag("--with-psnr", config.with_psnr, "also report PSNR");
}

std::optional<bool> polarity_flag(const std::string& value) {
  if (value.empty()) return std::nullopt;
  return value == "higher";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPARQ sparse-representation image quality index"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "csv";

  sparq::app::TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "learn and cache reference dictionaries");
  train_cmd->add_option("images", train.images, "reference images")->check(CLI::ExistingFile);
  train_cmd->add_option("--manifest", train.manifest, "train every reference in a manifest")
      ->check(CLI::ExistingFile);
  add_common_options(*train_cmd, config, format);

  sparq::app::ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "score one distorted image");
  score_cmd->add_option("reference", score.reference, "reference image")->required();
  score_cmd->add_option("distorted", score.distorted, "distorted image")->required();
  score_cmd->add_option("--dictionary", score.dictionary, "use this dictionary file");
  score_cmd->add_option("--entropy-map", score.entropy_map,
                        "write the reference entropy map as PGM");
  add_common_options(*score_cmd, config, format);

  sparq::app::EvaluateOptions evaluate;
  std::string evaluate_polarity;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "correlate scores with a rated dataset");
  evaluate_cmd->add_option("manifest", evaluate.manifest, "dataset manifest CSV")->required();
  evaluate_cmd->add_option("--polarity", evaluate_polarity, "override the subjective scale")
      ->check(CLI::IsMember({"higher", "lower"}));
  evaluate_cmd->add_option("--output", evaluate.output, "write the report here");
  evaluate_cmd->add_option("--scores-out", evaluate.scores_output, "write per-record scores");
  add_common_options(*evaluate_cmd, config, format);

  sparq::app::SweepOptions sweep;
  std::string sweep_polarity;
  auto* sweep_cmd = app.add_subcommand("sweep", "SROCC as a function of the salient fraction");
  sweep_cmd->add_option("manifest", sweep.manifest, "dataset manifest CSV")->required();
  sweep_cmd->add_option("--fractions", sweep.fractions, "salient fractions in (0, 1]")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--polarity", sweep_polarity, "override the subjective scale")
      ->check(CLI::IsMember({"higher", "lower"}));
  sweep_cmd->add_option("--output", sweep.output, "write the curve here");
  add_common_options(*sweep_cmd, config, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sparq::app::kExitOk : sparq::app::kExitUsage;
  }
  config.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;

  if (*train_cmd) return sparq::app::cmd_train(train, config, std::cout, std::cerr);
  if (*score_cmd) return sparq::app::cmd_score(score, config, std::cout, std::cerr);
  if (*evaluate_cmd) {
    evaluate.higher_is_better = polarity_flag(evaluate_polarity);
    return sparq::app::cmd_evaluate(evaluate, config, std::cout, std::cerr);
  }
  sweep.higher_is_better = polarity_flag(sweep_polarity);
  return sparq::app::cmd_sweep(sweep, config, std::cout, std::cerr);
}
