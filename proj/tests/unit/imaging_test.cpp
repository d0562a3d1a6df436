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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sparq/entropy.hpp"
#include "sparq/error.hpp"
#include "sparq/image.hpp"
#include "sparq/image_io.hpp"
#include "sparq/patches.hpp"

namespace sparq {
namespace {

using testing::data_path;

ColorImage rgb_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return ColorImage{1, 1, 3, {r, g, b}};
}

TEST(Grayscale, WhiteBlackRed) {
  EXPECT_EQ(to_grayscale(rgb_pixel(255, 255, 255)).at(0, 0), 255);
  EXPECT_EQ(to_grayscale(rgb_pixel(0, 0, 0)).at(0, 0), 0);
  EXPECT_EQ(to_grayscale(rgb_pixel(255, 0, 0)).at(0, 0), 76);
}

TEST(Grayscale, MatchesLumaFormulaOnAllPrimaries) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> v(0, 255);
  for (int i = 0; i < 2000; ++i) {
    const int r = v(rng), g = v(rng), b = v(rng);
    const double luma = 0.299 * r + 0.587 * g + 0.114 * b;
    const auto gray = to_grayscale(rgb_pixel(r, g, b)).at(0, 0);
    EXPECT_NEAR(gray, luma, 0.5 + 1e-9);
  }
}

TEST(Grayscale, SingleChannelPassesThrough) {
  ColorImage one{2, 2, 1, {1, 2, 3, 4}};
  const GrayImage g = to_grayscale(one);
  EXPECT_EQ(std::vector<std::uint8_t>(g.pixels().begin(), g.pixels().end()), one.data);
}

TEST(Grayscale, RejectsUnsupportedChannelCount) {
  ColorImage two{1, 1, 2, {1, 2}};
  EXPECT_THROW(to_grayscale(two), InvalidArgument);
}

TEST(DownsampleFactor, FormulaValues) {
  EXPECT_EQ(downsample_factor(GrayImage(256, 300)), 1);
  EXPECT_EQ(downsample_factor(GrayImage(512, 512)), 2);
  EXPECT_EQ(downsample_factor(GrayImage(200, 900)), 1);
  EXPECT_EQ(downsample_factor(GrayImage(384, 500)), 2);  // 1.5 rounds away from zero
  EXPECT_EQ(downsample_factor(GrayImage(383, 500)), 1);
  EXPECT_EQ(downsample_factor(GrayImage(768, 1024)), 3);
}

TEST(Downsample, IdentityAtFactorOne) {
  const GrayImage img = testing::synthetic_texture(17, 23, 0);
  EXPECT_EQ(downsample(img, 1), img);
}

TEST(Downsample, BlockMean) {
  const GrayImage img(2, 2, std::vector<std::uint8_t>{10, 20, 30, 40});
  const GrayImage out = downsample(img, 2);
  ASSERT_EQ(out.rows(), 1);
  ASSERT_EQ(out.cols(), 1);
  EXPECT_EQ(out.at(0, 0), 25);
}

TEST(Downsample, ConstantIsFixedPoint) {
  const GrayImage out = downsample(GrayImage(4, 4, 7), 2);
  EXPECT_EQ(out, GrayImage(2, 2, 7));
  const GrayImage odd = downsample(GrayImage(9, 7, 201), 3);
  EXPECT_EQ(odd, GrayImage(3, 2, 201));
}

TEST(Downsample, DropsPartialBlocksAndRejectsOversizedFactor) {
  const GrayImage out = downsample(testing::synthetic_texture(7, 5, 1), 2);
  EXPECT_EQ(out.rows(), 3);
  EXPECT_EQ(out.cols(), 2);
  EXPECT_THROW(downsample(GrayImage(3, 8), 4), InvalidArgument);
  EXPECT_THROW(downsample(GrayImage(3, 8), 0), InvalidArgument);
}

TEST(Entropy, ConstantPatchIsZero) {
  const EntropyMap map = local_entropy_map(GrayImage(11, 11, 93), 11);
  ASSERT_EQ(map.values.size(), 1u);
  EXPECT_EQ(map.at(0, 0), 0.0);
}

TEST(Entropy, TwoEquiprobableSymbols) {
  const GrayImage img(2, 2, std::vector<std::uint8_t>{0, 0, 255, 255});
  EXPECT_DOUBLE_EQ(local_entropy_map(img, 2).at(0, 0), 1.0);
}

TEST(Entropy, AllDistinctIntensities) {
  std::vector<std::uint8_t> px(121);
  std::iota(px.begin(), px.end(), 0);
  const EntropyMap map = local_entropy_map(GrayImage(11, 11, px), 11);
  EXPECT_NEAR(map.at(0, 0), std::log2(121.0), 1e-12);
  EXPECT_NEAR(map.at(0, 0), 6.9189, 1e-4);
}

TEST(Entropy, MapMatchesPerWindowOracle) {
  const GrayImage img = testing::synthetic_texture(40, 33, 2);
  for (int side : {1, 3, 11}) {
    const EntropyMap map = local_entropy_map(img, side);
    const auto expected = testing::direct_entropy_map(img, side);
    ASSERT_EQ(map.rows, img.rows() - side + 1);
    ASSERT_EQ(map.cols, img.cols() - side + 1);
    ASSERT_EQ(map.values.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_NEAR(map.values[i], expected[i], 1e-12) << "side " << side << " index " << i;
    }
  }
}

TEST(Entropy, SampleEntropyBoundsAndPermutationInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> levels(1, 256);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> v(0, levels(rng) - 1);
    std::vector<std::uint8_t> patch(121);
    for (auto& p : patch) p = static_cast<std::uint8_t>(v(rng));
    const double h = sample_entropy(patch);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(121.0) + 1e-12);
    EXPECT_NEAR(h, testing::direct_entropy(patch), 1e-12);
    std::shuffle(patch.begin(), patch.end(), rng);
    EXPECT_EQ(sample_entropy(patch), h);
  }
  EXPECT_EQ(sample_entropy({}), 0.0);
}

TEST(Entropy, RejectsWindowLargerThanImage) {
  EXPECT_THROW(local_entropy_map(GrayImage(10, 20), 11), InvalidArgument);
  EXPECT_THROW(local_entropy_map(GrayImage(10, 20), 0), InvalidArgument);
}

TEST(PatchVector, ColumnMajorOrder) {
  const GrayImage img(3, 3, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  const Eigen::VectorXd v = patch_vector(img, {1, 1}, 2);
  ASSERT_EQ(v.size(), 4);
  EXPECT_EQ(v(0), 5);
  EXPECT_EQ(v(1), 8);
  EXPECT_EQ(v(2), 6);
  EXPECT_EQ(v(3), 9);
  EXPECT_THROW(extract_patches(img, {{2, 2}}, 2), InvalidArgument);
}

TEST(TrainingPatches, ConstantImageHasNone) {
  const TrainingPatches t = extract_training_patches(GrayImage(64, 64, 50), 11, 100, 0);
  EXPECT_EQ(t.patches.count(), 0);
  EXPECT_TRUE(t.short_of_target);
}

TEST(TrainingPatches, NaturalImageYieldsTarget) {
  const GrayImage img = load_gray_image(data_path("camera_256.png"));
  const TrainingPatches t = extract_training_patches(img, 11, 3000, 0);
  EXPECT_FALSE(t.short_of_target);
  EXPECT_EQ(t.patches.n(), 121);
  EXPECT_EQ(t.patches.count(), 3000);
  EXPECT_EQ(t.patches.data.cols(), 3000);

  std::set<std::pair<int, int>> distinct;
  for (int j = 0; j < t.patches.count(); ++j) {
    const Anchor a = t.patches.anchors[j];
    EXPECT_TRUE(a.row >= 0 && a.col >= 0 && a.row + 11 <= img.rows() && a.col + 11 <= img.cols());
    distinct.insert({a.row, a.col});
    const Eigen::VectorXd col = t.patches.data.col(j);
    const double mean = col.mean();
    const double variance = (col.array() - mean).square().mean();
    EXPECT_GE(variance, kHomogeneousVariance);
    EXPECT_EQ(col, patch_vector(img, a, 11));
  }
  EXPECT_EQ(distinct.size(), 3000u);
}

TEST(TrainingPatches, SeedDeterminism) {
  const GrayImage img = load_gray_image(data_path("coffee_256.png"));
  const TrainingPatches a = extract_training_patches(img, 11, 500, 42);
  const TrainingPatches b = extract_training_patches(img, 11, 500, 42);
  const TrainingPatches c = extract_training_patches(img, 11, 500, 43);
  EXPECT_EQ(a.patches.anchors, b.patches.anchors);
  EXPECT_EQ(a.patches.data, b.patches.data);
  EXPECT_NE(a.patches.anchors, c.patches.anchors);
}

TEST(TrainingPatches, ShortImageReturnsAllInformative) {
  const GrayImage img = testing::textured_square(40, 40, 5, 5, 14, 9);
  const TrainingPatches t = extract_training_patches(img, 11, 5000, 1);
  EXPECT_TRUE(t.short_of_target);
  // Every window touching the noisy square is informative; count them directly.
  int informative = 0;
  for (int r = 0; r + 11 <= 40; ++r) {
    for (int c = 0; c + 11 <= 40; ++c) {
      const Eigen::VectorXd v = patch_vector(img, {r, c}, 11);
      if ((v.array() - v.mean()).square().mean() >= kHomogeneousVariance) ++informative;
    }
  }
  EXPECT_EQ(t.patches.count(), informative);
}

TEST(SalientCount, RoundingWithMinimumOne) {
  EXPECT_EQ(salient_count(100, 0.15), 15);
  EXPECT_EQ(salient_count(10, 0.15), 2);  // 1.5 rounds up
  EXPECT_EQ(salient_count(3, 0.1), 1);
  EXPECT_EQ(salient_count(57600, 1.0), 57600);
}

TEST(SalientPatches, FullFractionSelectsEveryAnchor) {
  const GrayImage img = testing::synthetic_texture(30, 25, 3);
  const SalientPatches s = select_salient_patches(img, img, 11, 1.0);
  const int n_valid = (30 - 10) * (25 - 10);
  EXPECT_EQ(s.valid_anchors, n_valid);
  EXPECT_EQ(s.reference.count(), n_valid);
  std::set<std::pair<int, int>> anchors;
  for (const auto& a : s.reference.anchors) anchors.insert({a.row, a.col});
  EXPECT_EQ(static_cast<int>(anchors.size()), n_valid);
}

TEST(SalientPatches, SmallFractionStaysInTexturedRegion) {
  const GrayImage img = testing::textured_square(64, 64, 30, 20, 20, 5);
  const SalientPatches s = select_salient_patches(img, img, 11, 0.02);
  ASSERT_EQ(s.reference.count(), salient_count(54 * 54, 0.02));

  // Independent ranking: direct entropies sorted descending, row-major tiebreak.
  // Values equal to 1e-9 count as ties; the oracle sums in a different order.
  auto entropies = testing::direct_entropy_map(img, 11);
  for (auto& e : entropies) e = std::round(e * 1e9);
  std::vector<int> order(entropies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return entropies[a] > entropies[b]; });
  for (int i = 0; i < s.reference.count(); ++i) {
    const Anchor a = s.reference.anchors[i];
    EXPECT_EQ(a.row * 54 + a.col, order[i]);
    // The window overlaps the noisy square.
    EXPECT_TRUE(a.row + 11 > 30 && a.row < 50 && a.col + 11 > 20 && a.col < 40);
  }
}

TEST(SalientPatches, TiesBrokenInRowMajorOrder) {
  // Constant image: every window has entropy 0, so the first q anchors in
  // row-major order win.
  const SalientPatches s = select_salient_patches(GrayImage(20, 20, 3), GrayImage(20, 20, 9),
                                                  11, 0.1);
  ASSERT_EQ(s.reference.count(), 10);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(s.reference.anchors[i], (Anchor{0, i}));
  }
  EXPECT_EQ(s.distorted.data, Eigen::MatrixXd::Constant(121, 10, 9.0));
}

TEST(SalientPatches, IdenticalImagesGiveIdenticalPatches) {
  const GrayImage img = load_gray_image(data_path("astronaut_256.png"));
  const SalientPatches s = select_salient_patches(img, img, 11, 0.15);
  EXPECT_EQ(s.reference.data, s.distorted.data);
  EXPECT_EQ(s.reference.anchors, s.distorted.anchors);
}

TEST(SalientPatches, ContractViolations) {
  const GrayImage img = testing::synthetic_texture(30, 30, 0);
  EXPECT_THROW(select_salient_patches(img, GrayImage(30, 31), 11, 0.5), DimensionMismatch);
  EXPECT_THROW(select_salient_patches(img, img, 11, 0.0), InvalidArgument);
  EXPECT_THROW(select_salient_patches(img, img, 11, 1.5), InvalidArgument);
}

TEST(ImageIo, LoadsBundledColorImage) {
  const ColorImage color = load_color_image(data_path("astronaut_256.png"));
  EXPECT_EQ(color.channels, 3);
  EXPECT_EQ(color.rows, 256);
  EXPECT_EQ(color.cols, 256);
  const GrayImage gray = load_gray_image(data_path("astronaut_256.png"));
  EXPECT_EQ(gray, to_grayscale(color));
}

TEST(ImageIo, PgmRoundTripAndMissingFile) {
  const auto dir = std::filesystem::temp_directory_path() / "sparq_imaging_test";
  std::filesystem::create_directories(dir);
  const GrayImage img = testing::synthetic_texture(13, 29, 4);
  save_pgm(img, dir / "round.pgm");
  EXPECT_EQ(load_gray_image(dir / "round.pgm"), img);
  EXPECT_THROW(load_gray_image(dir / "absent.png"), IoError);

  const EntropyMap map = local_entropy_map(img, 3);
  save_entropy_map_pgm(map, dir / "entropy.pgm");
  const GrayImage dumped = load_gray_image(dir / "entropy.pgm");
  EXPECT_EQ(dumped.rows(), map.rows);
  EXPECT_EQ(dumped.cols(), map.cols);
  const auto [lo, hi] = std::minmax_element(dumped.pixels().begin(), dumped.pixels().end());
  EXPECT_EQ(*lo, 0);
  EXPECT_EQ(*hi, 255);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sparq
