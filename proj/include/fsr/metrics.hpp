#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fsr/grid.hpp"
#include "fsr/imaging.hpp"

namespace fsr {

inline constexpr double kPeakAmplitude = 255.0;

inline void require_same_shape(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) {
    throw DataError("images " + detail::dims(a.width(), a.height()) + " and " +
                    detail::dims(b.width(), b.height()) + " differ in size");
  }
}

inline double mean_squared_error(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

/// 10 log10(255^2 / MSE). Identical images give +infinity.
inline double psnr(const GrayImage& a, const GrayImage& b) {
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeakAmplitude * kPeakAmplitude / mse);
}

namespace detail {

inline std::vector<double> ssim_window() {
  constexpr int kRadius = 5;
  constexpr double kSigma = 1.5;
  std::vector<double> taps(2 * kRadius + 1);
  double sum = 0.0;
  for (int d = -kRadius; d <= kRadius; ++d) {
    const double v = std::exp(-static_cast<double>(d * d) / (2.0 * kSigma * kSigma));
    taps[static_cast<std::size_t>(d + kRadius)] = v;
    sum += v;
  }
  for (double& v : taps) v /= sum;
  return taps;
}

// Separable correlation keeping only fully covered positions.
inline Grid<double> filter_valid(const Grid<double>& in, const std::vector<double>& taps) {
  const std::size_t k = taps.size();
  const std::size_t rows = in.rows() - k + 1;
  const std::size_t cols = in.cols() - k + 1;
  Grid<double> h(in.rows(), cols, 0.0);
  for (std::size_t y = 0; y < in.rows(); ++y) {
    for (std::size_t x = 0; x < cols; ++x) {
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += taps[t] * in(y, x + t);
      h(y, x) = acc;
    }
  }
  Grid<double> out(rows, cols, 0.0);
  for (std::size_t y = 0; y < rows; ++y) {
    for (std::size_t x = 0; x < cols; ++x) {
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += taps[t] * h(y + t, x);
      out(y, x) = acc;
    }
  }
  return out;
}

}  // namespace detail

/// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// K1 = 0.01, K2 = 0.03 and dynamic range 255, over fully covered windows.
inline double ssim(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  if (a.width() < 11 || a.height() < 11) {
    throw DataError("SSIM needs images of at least 11x11 pixels");
  }
  constexpr double c1 = (0.01 * kPeakAmplitude) * (0.01 * kPeakAmplitude);
  constexpr double c2 = (0.03 * kPeakAmplitude) * (0.03 * kPeakAmplitude);
  const auto taps = detail::ssim_window();

  Grid<double> aa(a.rows(), a.cols()), bb(a.rows(), a.cols()), ab(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const Grid<double> mu_a = detail::filter_valid(a, taps);
  const Grid<double> mu_b = detail::filter_valid(b, taps);
  const Grid<double> e_aa = detail::filter_valid(aa, taps);
  const Grid<double> e_bb = detail::filter_valid(bb, taps);
  const Grid<double> e_ab = detail::filter_valid(ab, taps);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double var_a = e_aa[i] - ma * ma;
    const double var_b = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
  }
  return total / static_cast<double>(mu_a.size());
}

}  // namespace fsr
