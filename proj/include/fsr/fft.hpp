#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "fsr/grid.hpp"

// Unnormalized discrete Fourier transforms of arbitrary length.
//
// Power-of-two lengths use an iterative radix-2 kernel, short odd lengths a
// direct table-driven sum and everything else Bluestein's chirp-z algorithm
// on top of the radix-2 kernel.
namespace fsr::fft {

using cplx = std::complex<double>;

enum class Direction { forward, inverse };

class Plan1d {
 public:
  explicit Plan1d(std::size_t n) : n_(n) {
    if (n_ == 0) throw ConfigError("transform length must be positive");
    if (is_pow2(n_)) {
      kind_ = Kind::radix2;
      init_radix2(n_, bitrev_, twiddle_);
    } else if (n_ <= kDirectLimit) {
      kind_ = Kind::direct;
      twiddle_.resize(n_);
      for (std::size_t j = 0; j < n_; ++j) twiddle_[j] = unit_root(j, n_);
    } else {
      kind_ = Kind::bluestein;
      init_bluestein();
    }
  }

  std::size_t size() const noexcept { return n_; }

  // In place, no scaling in either direction.
  void execute(std::span<cplx> data, Direction dir) const {
    if (data.size() != n_) throw DataError("transform length mismatch");
    if (n_ == 1) return;
    switch (kind_) {
      case Kind::radix2:
        radix2(data, bitrev_, twiddle_, dir);
        break;
      case Kind::direct:
        direct(data, dir);
        break;
      case Kind::bluestein:
        bluestein(data, dir);
        break;
    }
  }

 private:
  enum class Kind { radix2, direct, bluestein };
  static constexpr std::size_t kDirectLimit = 64;

  static bool is_pow2(std::size_t n) { return (n & (n - 1)) == 0; }

  // exp(-2 pi i j / n)
  static cplx unit_root(std::size_t j, std::size_t n) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
  }

  static void init_radix2(std::size_t n, std::vector<std::size_t>& bitrev, std::vector<cplx>& tw) {
    bitrev.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bitrev[i] = r;
    }
    tw.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) tw[j] = unit_root(j, n);
  }

  static void radix2(std::span<cplx> a, const std::vector<std::size_t>& bitrev,
                     const std::vector<cplx>& tw, Direction dir) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (i < bitrev[i]) std::swap(a[i], a[bitrev[i]]);
    }
    const bool inv = dir == Direction::inverse;
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          const cplx w = inv ? std::conj(tw[j * stride]) : tw[j * stride];
          const cplx u = a[start + j];
          const cplx v = a[start + j + half] * w;
          a[start + j] = u + v;
          a[start + j + half] = u - v;
        }
      }
    }
  }

  void direct(std::span<cplx> a, Direction dir) const {
    std::vector<cplx> out(n_);
    const bool inv = dir == Direction::inverse;
    for (std::size_t k = 0; k < n_; ++k) {
      cplx acc{};
      std::size_t idx = 0;
      for (std::size_t m = 0; m < n_; ++m) {
        acc += a[m] * (inv ? std::conj(twiddle_[idx]) : twiddle_[idx]);
        idx += k;
        if (idx >= n_) idx -= n_;
      }
      out[k] = acc;
    }
    std::copy(out.begin(), out.end(), a.begin());
  }

  void init_bluestein() {
    std::size_t len = 1;
    while (len < 2 * n_ - 1) len <<= 1;
    init_radix2(len, bitrev_, twiddle_);
    chirp_.resize(n_);
    const std::size_t period = 2 * n_;
    for (std::size_t j = 0; j < n_; ++j) {
      // j^2 mod 2n keeps the angle argument small for long transforms.
      const std::size_t sq = static_cast<std::size_t>((static_cast<unsigned long long>(j) * j) % period);
      const double angle = -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n_);
      chirp_[j] = {std::cos(angle), std::sin(angle)};
    }
    chirp_spectrum_.assign(len, cplx{});
    chirp_spectrum_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
      chirp_spectrum_[j] = std::conj(chirp_[j]);
      chirp_spectrum_[len - j] = std::conj(chirp_[j]);
    }
    radix2(chirp_spectrum_, bitrev_, twiddle_, Direction::forward);
  }

  void bluestein(std::span<cplx> a, Direction dir) const {
    const std::size_t len = chirp_spectrum_.size();
    const bool inv = dir == Direction::inverse;
    std::vector<cplx> work(len, cplx{});
    for (std::size_t j = 0; j < n_; ++j) {
      const cplx x = inv ? std::conj(a[j]) : a[j];
      work[j] = x * chirp_[j];
    }
    radix2(work, bitrev_, twiddle_, Direction::forward);
    for (std::size_t j = 0; j < len; ++j) work[j] *= chirp_spectrum_[j];
    radix2(work, bitrev_, twiddle_, Direction::inverse);
    const double scale = 1.0 / static_cast<double>(len);
    for (std::size_t k = 0; k < n_; ++k) {
      const cplx y = work[k] * scale * chirp_[k];
      a[k] = inv ? std::conj(y) : y;
    }
  }

  std::size_t n_;
  Kind kind_ = Kind::direct;
  std::vector<std::size_t> bitrev_;
  std::vector<cplx> twiddle_;
  std::vector<cplx> chirp_;
  std::vector<cplx> chirp_spectrum_;
};

/// Shared, immutable plan for length n. Thread-safe.
inline std::shared_ptr<const Plan1d> plan(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const Plan1d>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const Plan1d>(n);
  return slot;
}

/// Separable 2-D transform in place, unnormalized.
inline void transform_2d(Grid<cplx>& g, Direction dir) {
  const std::size_t rows = g.rows();
  const std::size_t cols = g.cols();
  if (rows == 0 || cols == 0) return;
  const auto row_plan = plan(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    row_plan->execute(std::span<cplx>(g.data() + r * cols, cols), dir);
  }
  const auto col_plan = plan(rows);
  std::vector<cplx> column(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) column[r] = g(r, c);
    col_plan->execute(column, dir);
    for (std::size_t r = 0; r < rows; ++r) g(r, c) = column[r];
  }
}

}  // namespace fsr::fft
