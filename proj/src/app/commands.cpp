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

#include "sparq/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>
#include "json.hpp"

#include "sparq/app/format.hpp"
#include "sparq/dictionary_io.hpp"
#include "sparq/entropy.hpp"
#include "sparq/error.hpp"
#include "sparq/image_io.hpp"
#include "sparq/patches.hpp"
#include "sparq/sparq.hpp"

namespace sparq::app {

namespace {

using nlohmann::ordered_json;

void apply_threads(const RunConfig& config) {
  if (config.threads > 0) omp_set_num_threads(config.threads);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const FormatError*>(&e) != nullptr) return kExitIo;
  return kExitUsage;
}

// Writes to the requested file, or to `fallback` when none is given.
void emit(const std::optional<std::filesystem::path>& file, const std::string& text,
          std::ostream& fallback) {
  if (!file) {
    fallback << text;
    return;
  }
  std::ofstream out(*file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file->string());
  out << text;
  if (!out) throw IoError("write failed: " + file->string());
}

ordered_json json_number(double value) {
  return std::isfinite(value) ? ordered_json(rounded6(value)) : ordered_json(nullptr);
}

ordered_json json_number(const std::optional<double>& value) {
  return value ? json_number(*value) : ordered_json(nullptr);
}

ScorePairs collect_pairs(const DatasetManifest& manifest, const std::vector<RecordResult>& results,
                         const std::vector<std::size_t>& members,
                         std::optional<double> RecordResult::*metric) {
  const double sign = manifest.higher_is_better ? 1.0 : -1.0;
  ScorePairs pairs;
  for (std::size_t i : members) {
    const auto& value = results[i].*metric;
    if (!value) continue;
    pairs.objective.push_back(*value);
    pairs.subjective.push_back(sign * manifest.records[i].score);
  }
  return pairs;
}

std::string groups_csv(const std::vector<GroupStats>& groups) {
  std::ostringstream out;
  out << "metric,group,count,srocc,krocc,cc,mae,rms,error\n";
  for (const auto& g : groups) {
    out << g.metric << ',' << csv_field(g.group) << ',' << g.count << ',';
    if (g.stats) {
      out << format_number(g.stats->srocc) << ',' << format_number(g.stats->krocc) << ','
          << format_number(g.stats->cc) << ',' << format_number(g.stats->mae) << ','
          << format_number(g.stats->rms) << ",\n";
    } else {
      out << ",,,,," << csv_field(g.error) << '\n';
    }
  }
  return out.str();
}

ordered_json groups_json(const std::vector<GroupStats>& groups) {
  ordered_json list = ordered_json::array();
  for (const auto& g : groups) {
    ordered_json item;
    item["metric"] = g.metric;
    item["group"] = g.group;
    item["count"] = g.count;
    if (g.stats) {
      item["srocc"] = json_number(g.stats->srocc);
      item["krocc"] = json_number(g.stats->krocc);
      item["cc"] = json_number(g.stats->cc);
      item["mae"] = json_number(g.stats->mae);
      item["rms"] = json_number(g.stats->rms);
      ordered_json gamma = ordered_json::array();
      for (double v : g.stats->fit.gamma) gamma.push_back(json_number(v));
      item["logistic"] = gamma;
      item["converged"] = g.stats->fit.converged;
    } else {
      item["error"] = g.error;
    }
    list.push_back(item);
  }
  return list;
}

std::string records_csv(const DatasetManifest& manifest, const std::vector<RecordResult>& results,
                        bool with_psnr) {
  std::ostringstream out;
  out << "reference,distorted,tag,subjective,sparq" << (with_psnr ? ",psnr" : "") << ",error\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& rec = manifest.records[i];
    const auto& res = results[i];
    out << csv_field(rec.reference.string()) << ',' << csv_field(rec.distorted.string()) << ','
        << csv_field(rec.tag) << ',' << format_number(rec.score) << ','
        << (res.sparq ? format_number(*res.sparq) : "");
    if (with_psnr) out << ',' << (res.psnr ? format_number(*res.psnr) : "");
    out << ',' << csv_field(res.error) << '\n';
  }
  return out.str();
}

ordered_json records_json(const DatasetManifest& manifest, const std::vector<RecordResult>& results,
                          bool with_psnr) {
  ordered_json list = ordered_json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& rec = manifest.records[i];
    ordered_json item;
    item["reference"] = rec.reference.string();
    item["distorted"] = rec.distorted.string();
    item["tag"] = rec.tag;
    item["subjective"] = json_number(rec.score);
    item["sparq"] = json_number(results[i].sparq);
    if (with_psnr) item["psnr"] = json_number(results[i].psnr);
    if (!results[i].error.empty()) item["error"] = results[i].error;
    list.push_back(item);
  }
  return list;
}

}  // namespace

std::vector<RecordResult> score_records(const DatasetManifest& manifest,
                                        const RunConfig& config, DictionaryCache& cache) {
  const SparqParams params = config.sparq_params();
  const auto count = static_cast<std::ptrdiff_t>(manifest.records.size());
  std::vector<RecordResult> results(manifest.records.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& rec = manifest.records[static_cast<std::size_t>(i)];
    auto& res = results[static_cast<std::size_t>(i)];
    try {
      const GrayImage ref = load_gray_image(rec.reference);
      const GrayImage dis = load_gray_image(rec.distorted);
      const auto entry = cache.get_or_train(ref);
      res.sparq = sparq_index(ref, dis, *entry.dictionary, params).sparq;
      if (config.with_psnr) res.psnr = psnr(ref, dis);
    } catch (const std::exception& e) {
      res.sparq.reset();
      res.psnr.reset();
      res.error = e.what();
    }
  }
  return results;
}

std::vector<GroupStats> evaluate_groups(const DatasetManifest& manifest,
                                        const std::vector<RecordResult>& results,
                                        bool with_psnr) {
  std::map<std::string, std::vector<std::size_t>> by_tag;
  std::vector<std::size_t> everyone;
  for (std::size_t i = 0; i < results.size(); ++i) {
    everyone.push_back(i);
    by_tag[manifest.records[i].tag].push_back(i);
  }

  std::vector<std::pair<std::string, std::optional<double> RecordResult::*>> metrics = {
      {"sparq", &RecordResult::sparq}};
  if (with_psnr) metrics.emplace_back("psnr", &RecordResult::psnr);

  std::vector<GroupStats> groups;
  const auto add = [&](const std::string& metric, std::optional<double> RecordResult::*member,
                       const std::string& name, const std::vector<std::size_t>& members) {
    GroupStats g;
    g.metric = metric;
    g.group = name;
    const ScorePairs pairs = collect_pairs(manifest, results, members, member);
    g.count = pairs.size();
    try {
      g.stats = evaluate(pairs);
    } catch (const Error& e) {
      g.error = e.what();
    }
    groups.push_back(std::move(g));
  };
  for (const auto& [metric, member] : metrics) {
    add(metric, member, kOverallGroup, everyone);
    for (const auto& [tag, members] : by_tag) add(metric, member, tag, members);
  }
  return groups;
}

std::vector<SweepPoint> sweep_saliency(const DatasetManifest& manifest,
                                       const std::vector<double>& fractions,
                                       const RunConfig& config, DictionaryCache& cache,
                                       std::size_t& failed_records) {
  SparqParams params = config.sparq_params();
  params.salient_fraction = *std::max_element(fractions.begin(), fractions.end());

  const std::size_t records = manifest.records.size();
  // scores[r][f] = SPARQ of record r at fractions[f]
  std::vector<std::vector<double>> scores(records);
  std::vector<char> ok(records, 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(records); ++i) {
    const auto& rec = manifest.records[static_cast<std::size_t>(i)];
    try {
      const GrayImage ref = load_gray_image(rec.reference);
      const GrayImage dis = load_gray_image(rec.distorted);
      const auto entry = cache.get_or_train(ref);
      const RankedPatchScores ranked = score_salient_patches(ref, dis, *entry.dictionary, params);
      std::vector<double> row;
      for (double f : fractions) {
        row.push_back(mean_of_leading(
            ranked.scores, static_cast<std::size_t>(salient_count(ranked.valid_anchors, f))));
      }
      scores[static_cast<std::size_t>(i)] = std::move(row);
      ok[static_cast<std::size_t>(i)] = 1;
    } catch (const std::exception&) {
      ok[static_cast<std::size_t>(i)] = 0;
    }
  }
  failed_records = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));

  const double sign = manifest.higher_is_better ? 1.0 : -1.0;
  std::vector<SweepPoint> points;
  for (std::size_t f = 0; f < fractions.size(); ++f) {
    SweepPoint point;
    point.fraction = fractions[f];
    ScorePairs pairs;
    for (std::size_t r = 0; r < records; ++r) {
      if (!ok[r]) continue;
      pairs.objective.push_back(scores[r][f]);
      pairs.subjective.push_back(sign * manifest.records[r].score);
    }
    point.count = pairs.size();
    try {
      point.srocc = srocc(pairs);
    } catch (const Error& e) {
      point.error = e.what();
    }
    points.push_back(std::move(point));
  }
  return points;
}

int cmd_train(const TrainOptions& options, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  try {
    config.validate();
    apply_threads(config);
    std::vector<std::filesystem::path> images = options.images;
    if (options.manifest) {
      for (const auto& p : load_manifest(*options.manifest).references()) images.push_back(p);
    }
    if (images.empty()) {
      err << "train: no images given\n";
      return kExitUsage;
    }
    // De-duplicate while keeping order.
    std::vector<std::filesystem::path> unique;
    std::set<std::filesystem::path> seen;
    for (const auto& p : images) {
      if (seen.insert(p).second) unique.push_back(p);
    }

    DictionaryCache cache(config.cache_dir, config);
    int trained = 0;
    int reused = 0;
    int failed = 0;
    for (const auto& path : unique) {
      try {
        const auto entry = cache.get_or_train(load_gray_image(path));
        (entry.trained ? trained : reused) += 1;
        out << (entry.trained ? "trained " : "cached  ") << path.string() << " -> "
            << entry.file.string() << '\n';
        if (entry.short_of_target) {
          err << "warning: " << path.string() << " has fewer than " << config.train_patches
              << " informative patches\n";
        }
      } catch (const std::exception& e) {
        ++failed;
        err << "error: " << path.string() << ": " << e.what() << '\n';
      }
    }
    out << "dictionaries trained: " << trained << ", reused: " << reused
        << ", failed: " << failed << '\n';
    if (failed == 0) return kExitOk;
    return failed == static_cast<int>(unique.size()) ? kExitIo : kExitPartial;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_score(const ScoreOptions& options, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  try {
    config.validate();
    apply_threads(config);
    const GrayImage ref = load_gray_image(options.reference);
    const GrayImage dis = load_gray_image(options.distorted);
    if (ref.rows() != dis.rows() || ref.cols() != dis.cols()) {
      err << "error: image sizes differ (" << ref.rows() << 'x' << ref.cols() << " vs "
          << dis.rows() << 'x' << dis.cols() << ")\n";
      return kExitUsage;
    }

    std::shared_ptr<const Dictionary> dict;
    if (options.dictionary) {
      StoredDictionary stored = load_dictionary(*options.dictionary);
      if (stored.patch_side != config.patch_side) {
        err << "error: dictionary was trained with patch side " << stored.patch_side << '\n';
        return kExitUsage;
      }
      dict = std::make_shared<const Dictionary>(std::move(stored.dictionary));
    } else {
      DictionaryCache cache(config.cache_dir, config);
      dict = cache.get_or_train(ref).dictionary;
    }

    const QualityResult result = sparq_index(ref, dis, *dict, config.sparq_params());
    const std::optional<double> psnr_db =
        config.with_psnr ? std::optional<double>(psnr(ref, dis)) : std::nullopt;
    if (options.entropy_map) {
      save_entropy_map_pgm(local_entropy_map(downsample(ref, result.factor), config.patch_side),
                           *options.entropy_map);
    }

    if (config.format == OutputFormat::kJson) {
      ordered_json doc;
      doc["sparq"] = json_number(result.sparq);
      if (psnr_db) doc["psnr"] = json_number(*psnr_db);
      doc["downsample_factor"] = result.factor;
      doc["valid_anchors"] = result.valid_anchors;
      doc["salient_count"] = result.salient_count;
      doc["degenerate_patches"] = result.degenerate_patches;
      ordered_json patches = ordered_json::array();
      for (std::size_t i = 0; i < result.patch_scores.size(); ++i) {
        patches.push_back({{"row", result.anchors[i].row},
                           {"col", result.anchors[i].col},
                           {"score", json_number(result.patch_scores[i])}});
      }
      doc["patches"] = std::move(patches);
      out << doc.dump(2) << '\n';
    } else {
      out << format_fixed6(result.sparq) << '\n';
      if (psnr_db) out << format_fixed6(*psnr_db) << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_evaluate(const EvaluateOptions& options, const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  try {
    config.validate();
    apply_threads(config);
    DatasetManifest manifest = load_manifest(options.manifest);
    if (options.higher_is_better) manifest.higher_is_better = *options.higher_is_better;

    DictionaryCache cache(config.cache_dir, config);
    const auto results = score_records(manifest, config, cache);
    const auto groups = evaluate_groups(manifest, results, config.with_psnr);

    bool partial = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].error.empty()) {
        partial = true;
        err << "error: record " << i + 1 << " (" << manifest.records[i].distorted.string()
            << "): " << results[i].error << '\n';
      }
    }
    for (const auto& g : groups) {
      if (!g.stats) {
        partial = true;
        err << "error: " << g.metric << '/' << g.group << ": " << g.error << '\n';
      }
    }

    if (config.format == OutputFormat::kJson) {
      ordered_json doc;
      doc["dataset"] = manifest.name;
      doc["higher_is_better"] = manifest.higher_is_better;
      doc["groups"] = groups_json(groups);
      doc["records"] = records_json(manifest, results, config.with_psnr);
      emit(options.output, doc.dump(2) + "\n", out);
    } else {
      emit(options.output, groups_csv(groups), out);
    }
    if (options.scores_output) {
      std::ofstream scores(*options.scores_output, std::ios::binary | std::ios::trunc);
      if (!scores) throw IoError("cannot write " + options.scores_output->string());
      scores << records_csv(manifest, results, config.with_psnr);
    }
    return partial ? kExitPartial : kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_sweep(const SweepOptions& options, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  try {
    config.validate();
    apply_threads(config);
    if (options.fractions.size() < 2) {
      err << "error: sweep needs at least two salient fractions\n";
      return kExitUsage;
    }
    std::vector<double> fractions;
    for (double f : options.fractions) {
      if (!(f > 0.0 && f <= 1.0)) {
        err << "error: salient fraction " << format_number(f) << " is outside (0, 1]\n";
        return kExitUsage;
      }
      if (std::find(fractions.begin(), fractions.end(), f) != fractions.end()) {
        err << "warning: duplicate fraction " << format_number(f) << " ignored\n";
        continue;
      }
      fractions.push_back(f);
    }
    std::sort(fractions.begin(), fractions.end());

    DatasetManifest manifest = load_manifest(options.manifest);
    if (options.higher_is_better) manifest.higher_is_better = *options.higher_is_better;
    DictionaryCache cache(config.cache_dir, config);
    std::size_t failed = 0;
    const auto points = sweep_saliency(manifest, fractions, config, cache, failed);

    bool partial = failed > 0;
    if (failed > 0) err << "error: " << failed << " record(s) could not be scored\n";
    for (const auto& p : points) {
      if (!p.srocc) {
        partial = true;
        err << "error: fraction " << format_number(p.fraction) << ": " << p.error << '\n';
      }
    }

    if (config.format == OutputFormat::kJson) {
      ordered_json doc;
      doc["dataset"] = manifest.name;
      ordered_json list = ordered_json::array();
      for (const auto& p : points) {
        ordered_json item;
        item["fraction"] = json_number(p.fraction);
        item["count"] = p.count;
        item["srocc"] = json_number(p.srocc);
        if (!p.error.empty()) item["error"] = p.error;
        list.push_back(item);
      }
      doc["points"] = std::move(list);
      emit(options.output, doc.dump(2) + "\n", out);
    } else {
      std::ostringstream csv;
      csv << "fraction,srocc\n";
      for (const auto& p : points) {
        csv << format_number(p.fraction) << ',' << (p.srocc ? format_number(*p.srocc) : "")
            << '\n';
      }
      emit(options.output, csv.str(), out);
    }
    return partial ? kExitPartial : kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace sparq::app
