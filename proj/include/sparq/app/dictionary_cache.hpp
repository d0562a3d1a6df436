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
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "sparq/app/run_config.hpp"
#include "sparq/dictionary.hpp"
#include "sparq/image.hpp"

namespace sparq::app {

/// Reference image after the viewing-distance downsampling used for training.
GrayImage preprocess_reference(const GrayImage& reference);

/// Hex key over the preprocessed pixels and every training parameter
/// (m, tau, k, patch side, seed, iterations, early stop).
std::string cache_key(const GrayImage& preprocessed, const RunConfig& config);

struct TrainedDictionary {
  std::shared_ptr<const Dictionary> dictionary;
  bool short_of_target = false;  ///< fewer than k informative patches existed
};

/// Learns a dictionary from one (grayscale, full-resolution) reference.
TrainedDictionary train_dictionary(const GrayImage& reference, const RunConfig& config);

/// Directory of dictionary files keyed by cache_key(). Safe to share across
/// threads: concurrent requests for one key train once and share the result.
class DictionaryCache {
 public:
  struct Entry {
    std::shared_ptr<const Dictionary> dictionary;
    std::filesystem::path file;
    bool trained = false;  ///< false when served from disk or memory
    bool short_of_target = false;
  };

  /// Creates the directory if needed (IoError on failure).
  DictionaryCache(std::filesystem::path dir, RunConfig config);

  /// Loads the cached dictionary for `reference`, training and storing it on
  /// a miss. An unreadable or corrupt cache file is retrained and replaced.
  Entry get_or_train(const GrayImage& reference);

  const std::filesystem::path& directory() const { return dir_; }

 private:
  Entry resolve(const std::string& key, const GrayImage& reference);

  std::filesystem::path dir_;
  RunConfig config_;
  std::mutex mutex_;
  std::map<std::string, std::shared_future<Entry>> pending_;
};

}  // namespace sparq::app
