#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fsr/scheduler.hpp"
#include "fsr/synth.hpp"

using namespace fsr;

namespace {

bool is_permutation_of_blocks(const ProcessingOrder& order, std::size_t count) {
  std::vector<std::size_t> sorted = order.blocks;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) return false;
  }
  return sorted.size() == count;
}

}  // namespace

TEST(BlockGrid, CeilDivisionAndPartialEdges) {
  const BlockGrid grid(10, 7, 4);
  EXPECT_EQ(grid.blocks_across(), 3u);
  EXPECT_EQ(grid.blocks_down(), 2u);
  const BlockRect last = grid.rect(5);
  EXPECT_EQ(last.x, 8u);
  EXPECT_EQ(last.y, 4u);
  EXPECT_EQ(last.width, 2u);
  EXPECT_EQ(last.height, 3u);

  Grid<int> owner(7, 10, 0);
  for (std::size_t b = 0; b < grid.block_count(); ++b) {
    const BlockRect r = grid.rect(b);
    for (std::size_t y = r.y; y < r.y + r.height; ++y)
      for (std::size_t x = r.x; x < r.x + r.width; ++x) ++owner(y, x);
  }
  for (int n : owner) EXPECT_EQ(n, 1);
}

TEST(DensityMap, FullMaskIsKernelSumInTheInterior) {
  const auto taps = density_kernel(4);
  double sum = 0.0;
  for (double a : taps)
    for (double b : taps) sum += a * b;
  const auto map = density_map(SampleMask(40, 40, true), 4);
  const std::size_t r = taps.size() / 2;
  for (std::size_t y = r; y < 40 - r; ++y)
    for (std::size_t x = r; x < 40 - r; ++x) EXPECT_NEAR(map(y, x), sum, 1e-12);
  EXPECT_LT(map(0, 0), sum);
}

TEST(DensityMap, EmptyMaskIsZero) {
  for (double v : density_map(SampleMask(16, 9, false), 4)) EXPECT_EQ(v, 0.0);
}

TEST(DensityMap, ImpulseGivesKernel) {
  SampleMask mask(31, 31, false);
  mask.set(15, 15, true);
  const auto map = density_map(mask, 4);
  const auto taps = density_kernel(4);
  const std::size_t r = taps.size() / 2;
  for (std::size_t y = 0; y < 31; ++y)
    for (std::size_t x = 0; x < 31; ++x) {
      const bool inside = y + r >= 15 && y <= 15 + r && x + r >= 15 && x <= 15 + r;
      const double expected = inside ? taps[y + r - 15] * taps[x + r - 15] : 0.0;
      EXPECT_NEAR(map(y, x), expected, 1e-15);
    }
  EXPECT_EQ(map(15, 15), 1.0);
}

TEST(DensityMap, HalfMaximumAtHalfBlockSize) {
  // FWHM equals the block size.
  const double sigma = density_sigma(8);
  EXPECT_NEAR(std::exp(-16.0 / (2.0 * sigma * sigma)), 0.5, 1e-12);
}

TEST(BlockOrder, UniformDensityIsRowMajor) {
  const BlockGrid grid(16, 12, 4);
  const auto order = block_order(Grid<double>(12, 16, 0.3), grid, BlockOrder::density);
  for (std::size_t i = 0; i < order.blocks.size(); ++i) EXPECT_EQ(order.blocks[i], i);
}

TEST(BlockOrder, DenseLeftHalfComesFirst) {
  SampleMask mask(32, 32, false);
  const SampleMask left = random_mask(16, 32, 0.8, 5);
  const SampleMask right = random_mask(16, 32, 0.1, 6);
  for (std::size_t y = 0; y < 32; ++y)
    for (std::size_t x = 0; x < 16; ++x) {
      mask.set(y, x, left.known(y, x));
      mask.set(y, x + 16, right.known(y, x));
    }
  const BlockGrid grid(32, 32, 4);
  const auto order = block_order(density_map(mask, 4), grid, BlockOrder::density);
  for (std::size_t i = 0; i < 32; ++i) EXPECT_LT(grid.rect(order.blocks[i]).x, 16u) << i;
  for (std::size_t i = 32; i < 64; ++i) EXPECT_GE(grid.rect(order.blocks[i]).x, 16u) << i;
}

TEST(BlockOrder, LineScanIgnoresScores) {
  const auto mask = random_mask(20, 20, 0.3, 9);
  const BlockGrid grid(20, 20, 4);
  const auto order = block_order(density_map(mask, 4), grid, BlockOrder::line_scan);
  for (std::size_t i = 0; i < order.blocks.size(); ++i) EXPECT_EQ(order.blocks[i], i);
}

TEST(BlockOrder, PropertiesOnRandomMasks) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t w = 5 + rng() % 60, h = 5 + rng() % 60, bs = 1 + rng() % 8;
    SampleMask mask = random_mask(w, h, 0.05 + (rng() % 90) / 100.0, rng());
    const BlockGrid grid(w, h, bs);
    const auto order = block_order(density_map(mask, bs), grid, BlockOrder::density);
    ASSERT_TRUE(is_permutation_of_blocks(order, grid.block_count()));
    for (std::size_t i = 1; i < order.blocks.size(); ++i) {
      EXPECT_GE(order.scores[order.blocks[i - 1]], order.scores[order.blocks[i]]);
    }
    // Adding samples never lowers a block score.
    SampleMask denser = mask;
    for (std::size_t i = 0; i < denser.size(); ++i) {
      if (rng() % 4 == 0) denser[i] = 1;
    }
    const auto more = block_order(density_map(denser, bs), grid, BlockOrder::density);
    for (std::size_t b = 0; b < grid.block_count(); ++b) EXPECT_GE(more.scores[b], order.scores[b]);
  }
}
