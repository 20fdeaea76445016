#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

#include "fsr/engine.hpp"
#include "fsr/grid.hpp"
#include "fsr/imaging.hpp"
#include "fsr/scheduler.hpp"

namespace fsr {

/// Transform-sized window around one block.
struct ReconstructionArea {
  Grid<double> amplitudes;
  Grid<AreaCategory> categories;
  std::ptrdiff_t origin_x = 0;  // image position of area pixel (0, 0)
  std::ptrdiff_t origin_y = 0;
  BlockRect block;              // in image coordinates
  std::size_t block_col = 0;    // block offset inside the area
  std::size_t block_row = 0;

  std::size_t count(AreaCategory c) const {
    std::size_t n = 0;
    for (AreaCategory v : categories) n += v == c ? 1 : 0;
    return n;
  }
};

/// Cuts the transform-sized window centred on `block` out of the working
/// image. Known pixels become available, previously filled pixels
/// reconstructed, everything else (including area outside the image)
/// unknown with amplitude 0.
inline ReconstructionArea extract_area(const GrayImage& work, const SampleMask& mask,
                                       const Grid<std::uint8_t>& reconstructed,
                                       std::size_t block_index, const FsrParams& params) {
  params.validate();
  require_same_shape(work, mask);
  if (!reconstructed.same_shape(mask)) throw DataError("reconstruction flags differ in size");
  const BlockGrid grid(work.width(), work.height(), params.block_size);
  if (block_index >= grid.block_count()) throw DataError("block index out of range");

  const std::size_t rows = params.transform_rows;
  const std::size_t cols = params.transform_cols;
  ReconstructionArea area;
  area.amplitudes = Grid<double>(rows, cols, 0.0);
  area.categories = Grid<AreaCategory>(rows, cols, AreaCategory::unknown);
  area.block = grid.rect(block_index);
  area.block_row = (rows - params.block_size) / 2;
  area.block_col = (cols - params.block_size) / 2;
  area.origin_y = static_cast<std::ptrdiff_t>(area.block.y) - static_cast<std::ptrdiff_t>(area.block_row);
  area.origin_x = static_cast<std::ptrdiff_t>(area.block.x) - static_cast<std::ptrdiff_t>(area.block_col);

  const auto height = static_cast<std::ptrdiff_t>(work.height());
  const auto width = static_cast<std::ptrdiff_t>(work.width());
  for (std::size_t m = 0; m < rows; ++m) {
    const std::ptrdiff_t y = area.origin_y + static_cast<std::ptrdiff_t>(m);
    if (y < 0 || y >= height) continue;
    for (std::size_t n = 0; n < cols; ++n) {
      const std::ptrdiff_t x = area.origin_x + static_cast<std::ptrdiff_t>(n);
      if (x < 0 || x >= width) continue;
      const auto yy = static_cast<std::size_t>(y);
      const auto xx = static_cast<std::size_t>(x);
      if (mask(yy, xx)) {
        area.categories(m, n) = AreaCategory::available;
        area.amplitudes(m, n) = work(yy, xx);
      } else if (reconstructed(yy, xx)) {
        area.categories(m, n) = AreaCategory::reconstructed;
        area.amplitudes(m, n) = work(yy, xx);
      }
    }
  }
  return area;
}

/// Fills every unknown pixel block by block in scheduled order, reusing
/// earlier blocks' estimates. Known pixels are copied through untouched.
inline GrayImage reconstruct_image(const GrayImage& available, const SampleMask& mask,
                                   const FsrParams& params = {}) {
  params.validate();
  require_same_shape(available, mask);
  if (mask.count() == 0) throw DataError("nothing to reconstruct from: mask has no samples");

  GrayImage work(available.width(), available.height());
  for (std::size_t i = 0; i < work.size(); ++i) work[i] = mask[i] ? available[i] : 0.0;

  const BlockGrid grid(work.width(), work.height(), params.block_size);
  const Grid<double> filtered = density_map(mask, params.block_size);
  const ProcessingOrder order = block_order(filtered, grid, params.order);

  Grid<std::uint8_t> reconstructed(work.rows(), work.cols(), 0);
  std::vector<std::uint8_t> deferred(grid.block_count(), 0);
  std::deque<std::size_t> queue(order.blocks.begin(), order.blocks.end());

  while (!queue.empty()) {
    const std::size_t b = queue.front();
    queue.pop_front();
    const BlockRect r = grid.rect(b);

    bool complete = true;
    for (std::size_t y = r.y; y < r.y + r.height && complete; ++y) {
      for (std::size_t x = r.x; x < r.x + r.width; ++x) {
        if (!mask(y, x)) {
          complete = false;
          break;
        }
      }
    }
    if (!complete) {
      const ReconstructionArea area = extract_area(work, mask, reconstructed, b, params);
      if (area.count(AreaCategory::unknown) == area.categories.size()) {
        if (deferred[b]) throw DataError("block has no usable samples in its reconstruction area");
        deferred[b] = 1;
        queue.push_back(b);
        continue;
      }
      const Grid<double> model = generate_model(area.amplitudes, area.categories, params);
      for (std::size_t y = r.y; y < r.y + r.height; ++y) {
        for (std::size_t x = r.x; x < r.x + r.width; ++x) {
          if (mask(y, x)) continue;
          const auto m = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(y) - area.origin_y);
          const auto n = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(x) - area.origin_x);
          work(y, x) = model(m, n);
        }
      }
    }
    for (std::size_t y = r.y; y < r.y + r.height; ++y) {
      for (std::size_t x = r.x; x < r.x + r.width; ++x) reconstructed(y, x) = 1;
    }
  }
  return work;
}

}  // namespace fsr
