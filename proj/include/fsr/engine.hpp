#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include "fsr/grid.hpp"
#include "fsr/spectral.hpp"
#include "fsr/weighting.hpp"

namespace fsr {

enum class BlockOrder {
  density,    // densest neighbourhoods first
  line_scan,  // row-major, for ablation runs
};

/// Model generation parameters. Defaults are the tuned standard set.
struct FsrParams {
  std::size_t block_size = 4;
  std::size_t border_width = 14;
  std::size_t transform_rows = 32;
  std::size_t transform_cols = 32;
  std::size_t iterations = 100;
  double decay = 0.7;   // rho
  double gamma = 0.5;   // orthogonality deficiency compensation
  double reuse = 0.5;   // delta
  bool frequency_weighting = true;
  BlockOrder order = BlockOrder::density;

  /// Spatial weighting and compensation kept, frequency weighting dropped,
  /// blocks visited in line-scan order.
  static FsrParams optimized_fse() {
    FsrParams p;
    p.frequency_weighting = false;
    p.order = BlockOrder::line_scan;
    return p;
  }

  void validate() const {
    if (block_size == 0) throw ConfigError("block size must be at least 1");
    if (transform_rows == 0 || transform_cols == 0) {
      throw ConfigError("transform size must be at least 1x1");
    }
    if (block_size + 2 * border_width > std::min(transform_rows, transform_cols)) {
      throw ConfigError("block size + 2 * border width (" +
                        std::to_string(block_size + 2 * border_width) +
                        ") exceeds the transform size " + std::to_string(transform_rows) + "x" +
                        std::to_string(transform_cols));
    }
    if (!(gamma > 0.0 && gamma < 2.0)) {
      throw ConfigError("gamma must lie in the open range (0,2), got " + std::to_string(gamma));
    }
    validate_weighting(decay, reuse);
  }
};

/// Frequency-domain state of one model run.
struct ModelState {
  Spectrum2D model;              // G: transform of the model g
  Spectrum2D weighted_residual;  // R_w: transform of r * w
  Spectrum2D weight_spectrum;    // W: transform of w
  std::size_t iteration = 0;

  std::size_t rows() const noexcept { return model.rows(); }
  std::size_t cols() const noexcept { return model.cols(); }
  double weight_sum() const noexcept { return weight_spectrum[0].real(); }
};

/// Sets the model to zero and the residual to the area amplitudes.
inline ModelState init_state(const Grid<double>& amplitudes, const WeightField& weights) {
  if (!amplitudes.same_shape(weights.weights)) {
    throw DataError("amplitude and weight grids differ in size");
  }
  double total = 0.0;
  for (double w : weights.weights) total += w;
  if (!(total > 0.0)) throw DataError("no usable samples in reconstruction area");

  Grid<double> weighted(amplitudes.rows(), amplitudes.cols());
  for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] = amplitudes[i] * weights.weights[i];

  ModelState s;
  s.model = Spectrum2D(amplitudes.rows(), amplitudes.cols());
  s.weighted_residual = forward_dft(weighted);
  s.weight_spectrum = forward_dft(weights.weights);
  // The DC bin is a plain sum; pin it to the exact real value.
  s.weight_spectrum[0] = total;
  return s;
}

/// Bin maximizing sqrt(w_f) * |R_w|. An empty span disables the frequency
/// weighting. Ties go to the lower radial index, then lower k, then lower l.
inline BinIndex select_basis(const ModelState& state, std::span<const double> freq_weights) {
  const std::size_t cols = state.cols();
  const auto& order = selection_order(state.rows(), cols);
  const Spectrum2D& r = state.weighted_residual;
  const bool weighted = !freq_weights.empty();
  if (weighted && freq_weights.size() != r.size()) {
    throw DataError("frequency weight grid does not match the spectrum");
  }
  // w_f * |R|^2 has the same maximizer as sqrt(w_f) * |R|.
  std::size_t best = order.front();
  double best_score = -1.0;
  for (std::size_t idx : order) {
    const double score = weighted ? freq_weights[idx] * std::norm(r[idx]) : std::norm(r[idx]);
    if (score > best_score) {
      best_score = score;
      best = idx;
    }
  }
  return {best / cols, best % cols};
}

inline cplx estimate_coefficient(const ModelState& state, BinIndex bin, double gamma) {
  return gamma * state.weighted_residual(bin.k, bin.l) / state.weight_sum();
}

/// Adds coeff * phi_(u,v) to the model and removes it from the weighted
/// residual: R_w[k,l] -= coeff * W[k-u, l-v].
inline void update_state(ModelState& state, BinIndex bin, cplx coeff) {
  const std::size_t rows = state.rows();
  const std::size_t cols = state.cols();
  state.model(bin.k, bin.l) += static_cast<double>(rows * cols) * coeff;
  const Spectrum2D& w = state.weight_spectrum;
  Spectrum2D& r = state.weighted_residual;
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t wk = k >= bin.k ? k - bin.k : k + rows - bin.k;
    const cplx* wrow = w.data() + wk * cols;
    cplx* rrow = r.data() + k * cols;
    // l - v wraps once; split the row at l = v.
    for (std::size_t l = 0; l < bin.l; ++l) rrow[l] -= coeff * wrow[l + cols - bin.l];
    for (std::size_t l = bin.l; l < cols; ++l) rrow[l] -= coeff * wrow[l - bin.l];
  }
  ++state.iteration;
}

/// Runs the configured number of select/estimate/update rounds and returns
/// the final state.
inline ModelState fit_model(const Grid<double>& amplitudes, const Grid<AreaCategory>& categories,
                            const FsrParams& params) {
  if (!amplitudes.same_shape(categories)) {
    throw DataError("amplitude and category grids differ in size");
  }
  if (!(params.gamma > 0.0 && params.gamma < 2.0)) {
    throw ConfigError("gamma must lie in the open range (0,2)");
  }
  const WeightField weights = spatial_weights(categories, params.decay, params.reuse);
  ModelState state = init_state(amplitudes, weights);
  std::span<const double> wf;
  if (params.frequency_weighting) wf = frequency_weights(amplitudes.rows(), amplitudes.cols()).values();
  for (std::size_t i = 0; i < params.iterations; ++i) {
    const BinIndex bin = select_basis(state, wf);
    update_state(state, bin, estimate_coefficient(state, bin, params.gamma));
  }
  return state;
}

/// Real part of the spatial model after the full iteration budget.
inline Grid<double> generate_model(const Grid<double>& amplitudes,
                                   const Grid<AreaCategory>& categories, const FsrParams& params) {
  const ModelState state = fit_model(amplitudes, categories, params);
  const Grid<cplx> spatial = inverse_dft(state.model);
  Grid<double> out(spatial.rows(), spatial.cols());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spatial[i].real();
  return out;
}

/// Weighted projection of a residual onto phi_(k,l) by direct summation:
/// sum(r conj(phi) w) / sum(|phi|^2 w). Reference path for the
/// frequency-domain estimate R_w[k,l] / W[0,0].
inline cplx project_spatial_oracle(const Grid<cplx>& residual, const WeightField& weights,
                                   BinIndex bin) {
  if (!residual.same_shape(weights.weights)) {
    throw DataError("residual and weight grids differ in size");
  }
  const std::size_t rows = residual.rows();
  const std::size_t cols = residual.cols();
  cplx num{};
  double den = 0.0;
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t n = 0; n < cols; ++n) {
      const cplx phi = basis_function(bin.k, bin.l, m, n, rows, cols);
      const double w = weights.weights(m, n);
      num += residual(m, n) * std::conj(phi) * w;
      den += std::norm(phi) * w;
    }
  }
  if (!(den > 0.0)) throw DataError("projection denominator is zero");
  return num / den;
}

inline cplx project_spatial_oracle(const Grid<double>& residual, const WeightField& weights,
                                   BinIndex bin) {
  Grid<cplx> r(residual.rows(), residual.cols());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = residual[i];
  return project_spatial_oracle(r, weights, bin);
}

}  // namespace fsr
