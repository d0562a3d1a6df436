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

#include "sparq/app/dictionary_cache.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <iostream>

#include "sparq/dictionary_io.hpp"
#include "sparq/error.hpp"
#include "sparq/ksvd.hpp"
#include "sparq/patches.hpp"

namespace sparq::app {

namespace {

std::uint64_t mix(std::uint64_t state, std::uint64_t value) {
  std::array<std::uint8_t, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<std::uint8_t>(value >> (8 * b));
  return fnv1a64(bytes, state);
}

}  // namespace

GrayImage preprocess_reference(const GrayImage& reference) {
  return downsample(reference, downsample_factor(reference));
}

std::string cache_key(const GrayImage& preprocessed, const RunConfig& config) {
  std::uint64_t h = fnv1a64(preprocessed.pixels());
  h = mix(h, static_cast<std::uint64_t>(preprocessed.rows()));
  h = mix(h, static_cast<std::uint64_t>(preprocessed.cols()));
  h = mix(h, static_cast<std::uint64_t>(config.atoms));
  h = mix(h, static_cast<std::uint64_t>(config.sparsity));
  h = mix(h, static_cast<std::uint64_t>(config.train_patches));
  h = mix(h, static_cast<std::uint64_t>(config.patch_side));
  h = mix(h, config.seed);
  h = mix(h, static_cast<std::uint64_t>(config.iterations));
  h = mix(h, std::bit_cast<std::uint64_t>(config.early_stop));
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

TrainedDictionary train_dictionary(const GrayImage& reference, const RunConfig& config) {
  const GrayImage image = preprocess_reference(reference);
  const TrainingPatches training =
      extract_training_patches(image, config.patch_side, config.train_patches, config.seed);
  LearnResult learned = learn(training.patches, config.learn_config());
  return TrainedDictionary{std::make_shared<const Dictionary>(std::move(learned.dictionary)),
                           training.short_of_target};
}

DictionaryCache::DictionaryCache(std::filesystem::path dir, RunConfig config)
    : dir_(std::move(dir)), config_(std::move(config)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw IoError("cannot create cache directory " + dir_.string());
  }
}

DictionaryCache::Entry DictionaryCache::get_or_train(const GrayImage& reference) {
  const std::string key = cache_key(preprocess_reference(reference), config_);
  std::promise<Entry> promise;
  std::shared_future<Entry> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = pending_.find(key);
    if (it == pending_.end()) {
      future = promise.get_future().share();
      pending_.emplace(key, future);
      owner = true;
    } else {
      future = it->second;
    }
  }
  if (!owner) {
    Entry shared = future.get();
    shared.trained = false;
    return shared;
  }
  try {
    promise.set_value(resolve(key, reference));
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(mutex_);
    pending_.erase(key);
  }
  return future.get();
}

DictionaryCache::Entry DictionaryCache::resolve(const std::string& key,
                                                const GrayImage& reference) {
  Entry entry;
  entry.file = dir_ / (key + ".spqd");
  if (std::filesystem::exists(entry.file)) {
    try {
      StoredDictionary stored = load_dictionary(entry.file);
      if (stored.patch_side == config_.patch_side && stored.sparsity == config_.sparsity &&
          stored.dictionary.m() == config_.atoms) {
        entry.dictionary = std::make_shared<const Dictionary>(std::move(stored.dictionary));
        return entry;
      }
    } catch (const Error& e) {
      std::cerr << "warning: discarding unusable cache file " << entry.file << ": " << e.what()
                << '\n';
    }
  }
  TrainedDictionary trained = train_dictionary(reference, config_);
  save_dictionary(StoredDictionary{*trained.dictionary, config_.sparsity, config_.patch_side},
                  entry.file);
  entry.dictionary = std::move(trained.dictionary);
  entry.trained = true;
  entry.short_of_target = trained.short_of_target;
  return entry;
}

}  // namespace sparq::app
