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
#include <istream>
#include <string>
#include <vector>

namespace sparq::app {

struct ManifestRecord {
  std::filesystem::path reference;
  std::filesystem::path distorted;
  double score = 0.0;  ///< subjective rating
  std::string tag;     ///< distortion type
};

/// A subject-rated dataset.
///
/// CSV with header `reference,distorted,score,tag`. Relative paths resolve
/// against the manifest's directory. Lines starting with `#` are comments,
/// except `# name: <text>` and `# higher_is_better: <true|false>` which set the
/// dataset name and the polarity of the subjective scale (false for DMOS).
struct DatasetManifest {
  std::string name;
  bool higher_is_better = true;
  std::vector<ManifestRecord> records;

  /// Distinct reference paths in first-appearance order.
  std::vector<std::filesystem::path> references() const;
};

/// Parses manifest text; FormatError on a bad header or row.
DatasetManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir);

/// Reads and parses the manifest, then checks every referenced file exists
/// (IoError otherwise). The name defaults to the file stem.
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace sparq::app
