#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "fsr/grid.hpp"

namespace fsr {

/// Role of a pixel inside a reconstruction area.
enum class AreaCategory : std::uint8_t {
  available,      // originally measured sample
  reconstructed,  // estimated while processing an earlier block
  unknown,        // missing, or padding outside the image
};

/// Spatial confidence weights of one reconstruction area.
struct WeightField {
  Grid<double> weights;
  double decay = 0.7;  // rho: per-pixel radial decay
  double reuse = 0.5;  // delta: extra factor for reconstructed pixels
};

inline void validate_weighting(double decay, double reuse) {
  if (!(decay > 0.0 && decay < 1.0)) {
    throw ConfigError("weight decay rho must lie in (0,1)");
  }
  if (!(reuse >= 0.0 && reuse <= 1.0)) {
    throw ConfigError("reuse factor delta must lie in [0,1]");
  }
}

/// Isotropic decay around the area centre ((M-1)/2, (N-1)/2).
/// Available pixels get decay^d, reconstructed ones reuse * decay^d, unknown
/// pixels zero.
inline WeightField spatial_weights(const Grid<AreaCategory>& categories, double decay,
                                   double reuse) {
  validate_weighting(decay, reuse);
  const std::size_t rows = categories.rows();
  const std::size_t cols = categories.cols();
  const double cm = (static_cast<double>(rows) - 1.0) / 2.0;
  const double cn = (static_cast<double>(cols) - 1.0) / 2.0;
  WeightField field{Grid<double>(rows, cols, 0.0), decay, reuse};
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t n = 0; n < cols; ++n) {
      const AreaCategory cat = categories(m, n);
      if (cat == AreaCategory::unknown) continue;
      const double dm = static_cast<double>(m) - cm;
      const double dn = static_cast<double>(n) - cn;
      const double w = std::pow(decay, std::sqrt(dm * dm + dn * dn));
      field.weights(m, n) = cat == AreaCategory::available ? w : reuse * w;
    }
  }
  return field;
}

/// sqrt(kt^2/M^2 + lt^2/N^2) with kt = M/2 - |k - M/2|, lt likewise.
/// Zero at DC, 1/sqrt(2) at the highest frequency of even-sized grids.
inline double radial_index(std::size_t k, std::size_t l, std::size_t rows, std::size_t cols) {
  const double M = static_cast<double>(rows);
  const double N = static_cast<double>(cols);
  const double kt = M / 2.0 - std::abs(static_cast<double>(k) - M / 2.0);
  const double lt = N / 2.0 - std::abs(static_cast<double>(l) - N / 2.0);
  return std::sqrt(kt * kt / (M * M) + lt * lt / (N * N));
}

namespace detail {

struct SelectionTables {
  Grid<double> frequency_weights;
  std::vector<std::size_t> scan_order;  // flat bin indices by (radial, k, l)
};

inline SelectionTables build_selection_tables(std::size_t rows, std::size_t cols) {
  SelectionTables t{Grid<double>(rows, cols), {}};
  Grid<double> radial(rows, cols);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t l = 0; l < cols; ++l) {
      const double r = radial_index(k, l, rows, cols);
      radial(k, l) = r;
      const double root = 1.0 - std::sqrt(2.0) * r;
      t.frequency_weights(k, l) = root * root;
    }
  }
  t.scan_order.resize(rows * cols);
  std::iota(t.scan_order.begin(), t.scan_order.end(), std::size_t{0});
  // Row-major flat index already orders by (k, l), so a stable sort on the
  // radial index gives the full tie-break order.
  std::stable_sort(t.scan_order.begin(), t.scan_order.end(),
                   [&](std::size_t a, std::size_t b) { return radial[a] < radial[b]; });
  return t;
}

inline const SelectionTables& selection_tables(std::size_t rows, std::size_t cols) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<const SelectionTables>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{rows, cols}];
  if (!slot) slot = std::make_unique<const SelectionTables>(build_selection_tables(rows, cols));
  return *slot;
}

}  // namespace detail

/// Frequency weighting (1 - sqrt(2) * radial_index)^2, values in [0,1].
/// Cached per size; the reference stays valid for the program lifetime.
inline const Grid<double>& frequency_weights(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ConfigError("frequency grid must be at least 1x1");
  return detail::selection_tables(rows, cols).frequency_weights;
}

/// All bins ordered by increasing radial index, then k, then l.
inline const std::vector<std::size_t>& selection_order(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ConfigError("frequency grid must be at least 1x1");
  return detail::selection_tables(rows, cols).scan_order;
}

}  // namespace fsr
