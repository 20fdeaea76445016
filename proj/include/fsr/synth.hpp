#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fsr/imaging.hpp"

namespace fsr {

/// SplitMix64 (Steele, Lea, Flood). Fully specified, so sequences are
/// identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = 0;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

/// Exactly round(density * width * height) known pixels, picked without
/// replacement by a partial Fisher-Yates shuffle.
inline SampleMask random_mask(std::size_t width, std::size_t height, double density,
                              std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw ConfigError("mask density must lie in (0,1], got " + std::to_string(density));
  }
  SampleMask mask(width, height, false);
  const std::size_t total = mask.size();
  const auto wanted = static_cast<std::size_t>(std::llround(density * static_cast<double>(total)));
  std::vector<std::size_t> index(total);
  std::iota(index.begin(), index.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < wanted; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(index[i], index[j]);
    mask[index[i]] = 1;
  }
  return mask;
}

/// Known pixels on every step-th row and column.
inline SampleMask regular_mask(std::size_t width, std::size_t height, std::size_t step) {
  if (step == 0) throw ConfigError("regular mask step must be at least 1");
  SampleMask mask(width, height, false);
  for (std::size_t y = 0; y < height; y += step) {
    for (std::size_t x = 0; x < width; x += step) mask.set(y, x, true);
  }
  return mask;
}

/// Rotation-symmetric chirp 127.5 (1 + cos(pi r^2 / (2R))), R = size / 2,
/// centred on pixel (size/2, size/2). The local radial frequency pi r / R
/// reaches Nyquist at r = R.
inline GrayImage zoneplate(std::size_t size) {
  if (size < 2) throw ConfigError("zoneplate size must be at least 2");
  GrayImage img(size, size);
  const double centre = static_cast<double>(size / 2);
  const double radius = static_cast<double>(size) / 2.0;
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double dx = static_cast<double>(x) - centre;
      const double dy = static_cast<double>(y) - centre;
      const double r2 = dx * dx + dy * dy;
      img(y, x) = 127.5 * (1.0 + std::cos(std::numbers::pi * r2 / (2.0 * radius)));
    }
  }
  return img;
}

struct CosineTerm {
  double k = 0.0;  // cycles per image along x
  double l = 0.0;  // cycles per image along y
  double amplitude = 0.0;
  double phase = 0.0;
};

/// 127.5 + sum a cos(2 pi (k x + l y) / size + phase). Not clipped.
inline GrayImage sparse_cosine_image(std::size_t size, std::span<const CosineTerm> terms) {
  if (size == 0) throw ConfigError("image size must be positive");
  if (terms.empty()) throw ConfigError("at least one cosine term is required");
  const double half = static_cast<double>(size) / 2.0;
  for (const auto& t : terms) {
    if (std::abs(t.k) > half || std::abs(t.l) > half) {
      throw ConfigError("cosine frequency beyond Nyquist");
    }
  }
  GrayImage img(size, size, 127.5);
  const double n = static_cast<double>(size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      double v = 127.5;
      for (const auto& t : terms) {
        v += t.amplitude * std::cos(2.0 * std::numbers::pi *
                                        (t.k * static_cast<double>(x) + t.l * static_cast<double>(y)) / n +
                                    t.phase);
      }
      img(y, x) = v;
    }
  }
  return img;
}

}  // namespace fsr
