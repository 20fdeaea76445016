#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fsr/grid.hpp"

namespace fsr {

namespace detail {

inline void check_dimensions(std::size_t width, std::size_t height, const char* what) {
  if (width == 0 || height == 0) {
    throw DataError(std::string(what) + " must be at least 1x1");
  }
}

inline std::string dims(std::size_t w, std::size_t h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

}  // namespace detail

/// Real-valued grayscale image, nominal amplitude range [0, 255].
/// Indexed as (y, x); amplitudes stay real until written to a file.
class GrayImage : public Grid<double> {
 public:
  GrayImage() = default;

  GrayImage(std::size_t width, std::size_t height, double fill = 0.0)
      : Grid<double>(height, width, fill) {
    detail::check_dimensions(width, height, "image");
    if (!std::isfinite(fill)) throw DataError("image amplitude is not finite");
  }

  GrayImage(std::size_t width, std::size_t height, std::vector<double> samples)
      : Grid<double>(height, width, std::move(samples)) {
    detail::check_dimensions(width, height, "image");
    if (!std::all_of(begin(), end(), [](double v) { return std::isfinite(v); })) {
      throw DataError("image amplitude is not finite");
    }
  }

  explicit GrayImage(Grid<double> grid) : Grid<double>(std::move(grid)) {
    detail::check_dimensions(cols(), rows(), "image");
    if (!std::all_of(begin(), end(), [](double v) { return std::isfinite(v); })) {
      throw DataError("image amplitude is not finite");
    }
  }

  std::size_t width() const noexcept { return cols(); }
  std::size_t height() const noexcept { return rows(); }
};

/// Sampling mask; a set bit means the amplitude at that pixel is known.
class SampleMask : public Grid<std::uint8_t> {
 public:
  SampleMask() = default;

  SampleMask(std::size_t width, std::size_t height, bool fill = false)
      : Grid<std::uint8_t>(height, width, fill ? 1 : 0) {
    detail::check_dimensions(width, height, "mask");
  }

  SampleMask(std::size_t width, std::size_t height, const std::vector<bool>& bits)
      : Grid<std::uint8_t>(height, width) {
    detail::check_dimensions(width, height, "mask");
    if (bits.size() != size()) throw DataError("mask bit count does not match dimensions");
    for (std::size_t i = 0; i < bits.size(); ++i) (*this)[i] = bits[i] ? 1 : 0;
  }

  std::size_t width() const noexcept { return cols(); }
  std::size_t height() const noexcept { return rows(); }

  bool known(std::size_t y, std::size_t x) const noexcept { return (*this)(y, x) != 0; }
  void set(std::size_t y, std::size_t x, bool value) noexcept { (*this)(y, x) = value ? 1 : 0; }

  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count_if(begin(), end(), [](std::uint8_t b) { return b != 0; }));
  }
};

inline void require_same_shape(const GrayImage& image, const SampleMask& mask) {
  if (!image.same_shape(mask)) {
    throw DataError("image " + detail::dims(image.width(), image.height()) +
                    " and mask " + detail::dims(mask.width(), mask.height()) +
                    " differ in size");
  }
}

/// Fraction of known pixels.
inline double density(const SampleMask& mask) {
  if (mask.empty()) return 0.0;
  return static_cast<double>(mask.count()) / static_cast<double>(mask.size());
}

/// Keeps amplitudes where the mask is set and zeroes everything else.
inline GrayImage subsample(const GrayImage& image, const SampleMask& mask) {
  require_same_shape(image, mask);
  GrayImage out(image.width(), image.height());
  for (std::size_t i = 0; i < image.size(); ++i) out[i] = mask[i] ? image[i] : 0.0;
  return out;
}

}  // namespace fsr
