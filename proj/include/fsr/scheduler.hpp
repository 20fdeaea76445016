#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "fsr/engine.hpp"
#include "fsr/grid.hpp"
#include "fsr/imaging.hpp"

namespace fsr {

struct BlockRect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;
};

/// Tiling of an image into block_size squares; the last column and row of
/// blocks may be partial.
class BlockGrid {
 public:
  BlockGrid(std::size_t width, std::size_t height, std::size_t block_size)
      : width_(width), height_(height), block_size_(block_size) {
    if (block_size_ == 0) throw ConfigError("block size must be at least 1");
    across_ = (width_ + block_size_ - 1) / block_size_;
    down_ = (height_ + block_size_ - 1) / block_size_;
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t block_size() const noexcept { return block_size_; }
  std::size_t blocks_across() const noexcept { return across_; }
  std::size_t blocks_down() const noexcept { return down_; }
  std::size_t block_count() const noexcept { return across_ * down_; }

  BlockRect rect(std::size_t index) const noexcept {
    const std::size_t bx = index % across_;
    const std::size_t by = index / across_;
    BlockRect r;
    r.x = bx * block_size_;
    r.y = by * block_size_;
    r.width = std::min(block_size_, width_ - r.x);
    r.height = std::min(block_size_, height_ - r.y);
    return r;
  }

 private:
  std::size_t width_;
  std::size_t height_;
  std::size_t block_size_;
  std::size_t across_ = 0;
  std::size_t down_ = 0;
};

/// Block permutation plus the score of every block (indexed by block id).
struct ProcessingOrder {
  std::vector<std::size_t> blocks;
  std::vector<double> scores;
};

/// Standard deviation of a Gaussian whose full width at half maximum is
/// block_size.
inline double density_sigma(std::size_t block_size) {
  return static_cast<double>(block_size) / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

/// Unnormalized sampled Gaussian exp(-d^2 / 2 sigma^2), truncated at
/// +-ceil(3 sigma).
inline std::vector<double> density_kernel(std::size_t block_size) {
  const double sigma = density_sigma(block_size);
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
    const double x = static_cast<double>(d);
    taps[static_cast<std::size_t>(d + radius)] = std::exp(-x * x / (2.0 * sigma * sigma));
  }
  return taps;
}

/// Mask low-passed by a separable Gaussian; pixels outside the image count
/// as unavailable.
inline Grid<double> density_map(const SampleMask& mask, std::size_t block_size) {
  if (block_size == 0) throw ConfigError("block size must be at least 1");
  const std::vector<double> taps = density_kernel(block_size);
  const auto radius = static_cast<std::ptrdiff_t>(taps.size() / 2);
  const auto rows = static_cast<std::ptrdiff_t>(mask.rows());
  const auto cols = static_cast<std::ptrdiff_t>(mask.cols());

  Grid<double> horizontal(mask.rows(), mask.cols(), 0.0);
  for (std::ptrdiff_t y = 0; y < rows; ++y) {
    for (std::ptrdiff_t x = 0; x < cols; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
        const std::ptrdiff_t xs = x + d;
        if (xs < 0 || xs >= cols) continue;
        if (mask(static_cast<std::size_t>(y), static_cast<std::size_t>(xs))) {
          acc += taps[static_cast<std::size_t>(d + radius)];
        }
      }
      horizontal(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = acc;
    }
  }
  Grid<double> out(mask.rows(), mask.cols(), 0.0);
  for (std::ptrdiff_t y = 0; y < rows; ++y) {
    for (std::ptrdiff_t x = 0; x < cols; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
        const std::ptrdiff_t ys = y + d;
        if (ys < 0 || ys >= rows) continue;
        acc += taps[static_cast<std::size_t>(d + radius)] *
               horizontal(static_cast<std::size_t>(ys), static_cast<std::size_t>(x));
      }
      out(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = acc;
    }
  }
  return out;
}

/// Density mode sorts blocks by decreasing summed density, ties in row-major
/// order. Line-scan mode is plain row-major.
inline ProcessingOrder block_order(const Grid<double>& filtered, const BlockGrid& grid,
                                   BlockOrder mode) {
  if (filtered.rows() != grid.height() || filtered.cols() != grid.width()) {
    throw DataError("density map does not match the block grid");
  }
  ProcessingOrder order;
  order.scores.assign(grid.block_count(), 0.0);
  for (std::size_t b = 0; b < grid.block_count(); ++b) {
    const BlockRect r = grid.rect(b);
    double sum = 0.0;
    for (std::size_t y = r.y; y < r.y + r.height; ++y) {
      for (std::size_t x = r.x; x < r.x + r.width; ++x) sum += filtered(y, x);
    }
    order.scores[b] = sum;
  }
  order.blocks.resize(grid.block_count());
  std::iota(order.blocks.begin(), order.blocks.end(), std::size_t{0});
  if (mode == BlockOrder::density) {
    std::stable_sort(order.blocks.begin(), order.blocks.end(), [&](std::size_t a, std::size_t b) {
      return order.scores[a] > order.scores[b];
    });
  }
  return order;
}

}  // namespace fsr
