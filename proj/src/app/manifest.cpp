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

#include "sparq/app/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "sparq/error.hpp"

namespace sparq::app {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

// Splits one CSV line; double quotes may wrap a field containing commas.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        current += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

double parse_score(const std::string& text, int line_no) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("manifest line " + std::to_string(line_no) + ": bad score '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<std::filesystem::path> DatasetManifest::references() const {
  std::vector<std::filesystem::path> out;
  std::set<std::filesystem::path> seen;
  for (const auto& r : records) {
    if (seen.insert(r.reference).second) out.push_back(r.reference);
  }
  return out;
}

DatasetManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  DatasetManifest manifest;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  const auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : (base_dir / path).lexically_normal();
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string body = trim(std::string_view(text).substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = lower(trim(std::string_view(body).substr(0, colon)));
      const std::string value = trim(std::string_view(body).substr(colon + 1));
      if (key == "name") {
        manifest.name = value;
      } else if (key == "higher_is_better") {
        const std::string v = lower(value);
        if (v != "true" && v != "false") {
          throw FormatError("manifest: higher_is_better must be true or false");
        }
        manifest.higher_is_better = v == "true";
      }
      continue;
    }

    const auto fields = split_csv(text);
    if (!have_header) {
      std::vector<std::string> names;
      for (const auto& f : fields) names.push_back(lower(f));
      if (names != std::vector<std::string>{"reference", "distorted", "score", "tag"}) {
        throw FormatError("manifest header must be 'reference,distorted,score,tag'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": expected 4 fields");
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": empty path");
    }
    manifest.records.push_back(
        {resolve(fields[0]), resolve(fields[1]), parse_score(fields[2], line_no), fields[3]});
  }
  if (!have_header) throw FormatError("manifest is empty");
  return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  DatasetManifest manifest = parse_manifest(in, path.parent_path());
  if (manifest.name.empty()) manifest.name = path.stem().string();
  for (const auto& r : manifest.records) {
    for (const auto& p : {r.reference, r.distorted}) {
      if (!std::filesystem::is_regular_file(p)) {
        throw IoError("manifest references a missing file: " + p.string());
      }
    }
  }
  return manifest;
}

}  // namespace sparq::app
