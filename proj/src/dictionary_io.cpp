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

#include "sparq/dictionary_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <vector>

#include "sparq/error.hpp"

namespace sparq {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'P', 'Q', 'D'};
constexpr std::size_t kHeaderBytes = 4 + 5 * 4;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(p[b]) << (8 * b);
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return v;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t state) {
  for (std::uint8_t b : bytes) {
    state ^= b;
    state *= 0x100000001b3ULL;
  }
  return state;
}

void save_dictionary(const StoredDictionary& stored, const std::filesystem::path& path) {
  const Dictionary& dict = stored.dictionary;
  std::vector<std::uint8_t> bytes(kMagic.begin(), kMagic.end());
  put_u32(bytes, kDictionaryFormatVersion);
  put_u32(bytes, static_cast<std::uint32_t>(dict.n()));
  put_u32(bytes, static_cast<std::uint32_t>(dict.m()));
  put_u32(bytes, static_cast<std::uint32_t>(stored.sparsity));
  put_u32(bytes, static_cast<std::uint32_t>(stored.patch_side));
  const std::size_t payload_begin = bytes.size();
  for (int j = 0; j < dict.m(); ++j) {
    for (int i = 0; i < dict.n(); ++i) {
      put_u64(bytes, std::bit_cast<std::uint64_t>(dict.atoms()(i, j)));
    }
  }
  put_u64(bytes, fnv1a64(std::span(bytes).subspan(payload_begin)));

  // Unique temporary name so concurrent writers of one key never collide.
  std::random_device entropy;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(entropy());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write dictionary " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move dictionary into place: " + path.string());
  }
}

StoredDictionary load_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dictionary " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderBytes) throw FormatError("dictionary file truncated");
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw FormatError("not a dictionary file (bad magic)");
  }
  const std::uint32_t version = get_u32(bytes.data() + 4);
  if (version != kDictionaryFormatVersion) {
    throw FormatError("unsupported dictionary format version " + std::to_string(version));
  }
  const std::uint32_t n = get_u32(bytes.data() + 8);
  const std::uint32_t m = get_u32(bytes.data() + 12);
  const std::uint32_t tau = get_u32(bytes.data() + 16);
  const std::uint32_t side = get_u32(bytes.data() + 20);
  if (n == 0 || m == 0 || n > (1u << 20) || m > (1u << 20)) {
    throw FormatError("implausible dictionary dimensions");
  }
  const std::size_t payload = static_cast<std::size_t>(n) * m * 8;
  if (bytes.size() != kHeaderBytes + payload + 8) {
    throw FormatError("dictionary file has wrong size (truncated or padded)");
  }
  const auto payload_bytes = std::span(bytes).subspan(kHeaderBytes, payload);
  if (fnv1a64(payload_bytes) != get_u64(bytes.data() + kHeaderBytes + payload)) {
    throw FormatError("dictionary checksum mismatch");
  }
  if (static_cast<std::uint64_t>(side) * side != n) {
    throw FormatError("dictionary patch side does not match atom length");
  }

  Eigen::MatrixXd atoms(n, m);
  const std::uint8_t* p = payload_bytes.data();
  for (std::uint32_t j = 0; j < m; ++j) {
    for (std::uint32_t i = 0; i < n; ++i, p += 8) {
      atoms(i, j) = std::bit_cast<double>(get_u64(p));
    }
  }
  return StoredDictionary{Dictionary(std::move(atoms)), static_cast<int>(tau),
                          static_cast<int>(side)};
}

}  // namespace sparq
