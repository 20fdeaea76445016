#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "fsr/fft.hpp"
#include "fsr/grid.hpp"
#include "fsr/imaging.hpp"

// DFT conventions used throughout the library.
//
// The Fourier basis is phi_(k,l)[m,n] = exp(+2 pi i (k m / M + l n / N)).
// The forward transform is the unnormalized scalar product with conj(phi);
// the inverse carries the 1/(MN) factor.
namespace fsr {

using cplx = std::complex<double>;

/// Complex M x N spectrum indexed (k, l).
using Spectrum2D = Grid<cplx>;

/// Bin of an M x N spectrum.
struct BinIndex {
  std::size_t k = 0;
  std::size_t l = 0;
  friend bool operator==(const BinIndex&, const BinIndex&) = default;
};

inline cplx basis_function(std::size_t k, std::size_t l, std::size_t m, std::size_t n,
                           std::size_t rows, std::size_t cols) {
  // Reduce the products modulo the period before converting to an angle.
  const double a = static_cast<double>((k * m) % rows) / static_cast<double>(rows);
  const double b = static_cast<double>((l * n) % cols) / static_cast<double>(cols);
  const double angle = 2.0 * std::numbers::pi * (a + b);
  return {std::cos(angle), std::sin(angle)};
}

inline Spectrum2D forward_dft(const Grid<double>& block) {
  Spectrum2D out(block.rows(), block.cols());
  for (std::size_t i = 0; i < block.size(); ++i) out[i] = block[i];
  fft::transform_2d(out, fft::Direction::forward);
  return out;
}

inline Spectrum2D forward_dft(const Grid<cplx>& block) {
  Spectrum2D out = block;
  fft::transform_2d(out, fft::Direction::forward);
  return out;
}

inline Grid<cplx> inverse_dft(const Spectrum2D& spectrum) {
  Grid<cplx> out = spectrum;
  fft::transform_2d(out, fft::Direction::inverse);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

/// Transform of the 0/1 availability indicator. Q[0,0] is the sample count.
inline Spectrum2D mask_spectrum(const Grid<std::uint8_t>& mask) {
  Spectrum2D out(mask.rows(), mask.cols());
  for (std::size_t i = 0; i < mask.size(); ++i) out[i] = mask[i] ? 1.0 : 0.0;
  fft::transform_2d(out, fft::Direction::forward);
  return out;
}

}  // namespace fsr
