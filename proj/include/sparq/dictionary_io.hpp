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
#include <optional>
#include <span>

#include "sparq/dictionary.hpp"

namespace sparq {

// Binary layout, all integers little-endian:
//   "SPQD" | version u32 | n u32 | m u32 | tau u32 | patch_side u32
//   | n*m float64, column-major | FNV-1a 64-bit checksum of the float block
inline constexpr std::uint32_t kDictionaryFormatVersion = 1;

struct StoredDictionary {
  Dictionary dictionary;
  int sparsity = 0;
  int patch_side = 0;
};

/// FNV-1a, 64-bit.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t state = 0xcbf29ce484222325ULL);

/// Writes to a temporary sibling then renames, so readers never see a partial
/// file. Throws IoError on failure.
void save_dictionary(const StoredDictionary& stored, const std::filesystem::path& path);

/// Throws IoError if unreadable, FormatError on bad magic, version, size or
/// checksum, and InvariantViolation if the matrix is not a valid dictionary.
StoredDictionary load_dictionary(const std::filesystem::path& path);

}  // namespace sparq
