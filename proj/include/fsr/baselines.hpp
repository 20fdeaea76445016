#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/polygon/voronoi.hpp>

#include "fsr/fft.hpp"
#include "fsr/grid.hpp"
#include "fsr/imaging.hpp"

// Reference reconstructors: nearest neighbour, Delaunay-linear and
// Papoulis-Gerchberg band-limited.
namespace fsr {

namespace detail {

struct KnownPixel {
  std::int32_t x;
  std::int32_t y;
  double value;
};

inline std::vector<KnownPixel> known_pixels(const GrayImage& image, const SampleMask& mask) {
  std::vector<KnownPixel> out;
  out.reserve(mask.count());
  for (std::size_t y = 0; y < mask.height(); ++y) {
    for (std::size_t x = 0; x < mask.width(); ++x) {
      if (mask(y, x)) out.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y), image(y, x)});
    }
  }
  return out;
}

// Uniform bucket grid over the known pixels for exact nearest queries.
class NearestIndex {
 public:
  explicit NearestIndex(const std::vector<KnownPixel>& pts, std::size_t width, std::size_t height)
      : pts_(pts) {
    const double area = static_cast<double>(width) * static_cast<double>(height);
    cell_ = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(std::sqrt(area / static_cast<double>(pts.size())) * 2.0)));
    across_ = (static_cast<std::int64_t>(width) + cell_ - 1) / cell_;
    down_ = (static_cast<std::int64_t>(height) + cell_ - 1) / cell_;
    start_.assign(static_cast<std::size_t>(across_ * down_ + 1), 0);
    for (const auto& p : pts_) ++start_[bucket(p.x, p.y) + 1];
    for (std::size_t i = 1; i < start_.size(); ++i) start_[i] += start_[i - 1];
    order_.resize(pts_.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    // Points arrive in (y, x) order, so each bucket stays (y, x) sorted.
    for (std::size_t i = 0; i < pts_.size(); ++i) order_[fill[bucket(pts_[i].x, pts_[i].y)]++] = i;
  }

  // Euclidean nearest; ties go to the smaller y, then the smaller x.
  const KnownPixel& nearest(std::int64_t x, std::int64_t y) const {
    const std::int64_t cx = x / cell_;
    const std::int64_t cy = y / cell_;
    std::size_t best = 0;
    std::int64_t best_d2 = std::numeric_limits<std::int64_t>::max();
    const std::int64_t max_ring = std::max(across_, down_);
    for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
      if (ring > 0 && best_d2 != std::numeric_limits<std::int64_t>::max()) {
        const std::int64_t gap = (ring - 1) * cell_ + 1;
        if (gap * gap > best_d2) break;
      }
      for (std::int64_t by = cy - ring; by <= cy + ring; ++by) {
        if (by < 0 || by >= down_) continue;
        const bool edge_row = by == cy - ring || by == cy + ring;
        for (std::int64_t bx = cx - ring; bx <= cx + ring; bx += (edge_row ? 1 : 2 * ring)) {
          if (bx >= 0 && bx < across_) {
            const auto b = static_cast<std::size_t>(by * across_ + bx);
            for (std::size_t i = start_[b]; i < start_[b + 1]; ++i) {
              const auto& p = pts_[order_[i]];
              const std::int64_t dx = p.x - x;
              const std::int64_t dy = p.y - y;
              const std::int64_t d2 = dx * dx + dy * dy;
              if (d2 < best_d2 || (d2 == best_d2 && better(p, pts_[best]))) {
                best_d2 = d2;
                best = order_[i];
              }
            }
          }
          if (ring == 0) break;
        }
      }
    }
    return pts_[best];
  }

 private:
  static bool better(const KnownPixel& a, const KnownPixel& b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  }

  std::size_t bucket(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>((y / cell_) * across_ + x / cell_);
  }

  const std::vector<KnownPixel>& pts_;
  std::int64_t cell_ = 1;
  std::int64_t across_ = 1;
  std::int64_t down_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> order_;
};

inline void require_samples(const SampleMask& mask) {
  if (mask.count() == 0) throw DataError("nothing to reconstruct from: mask has no samples");
}

}  // namespace detail

/// Each unknown pixel copies its Euclidean-nearest known pixel.
inline GrayImage nearest_fill(const GrayImage& available, const SampleMask& mask) {
  require_same_shape(available, mask);
  detail::require_samples(mask);
  const auto pts = detail::known_pixels(available, mask);
  const detail::NearestIndex index(pts, mask.width(), mask.height());
  GrayImage out(available.width(), available.height());
  for (std::size_t y = 0; y < mask.height(); ++y) {
    for (std::size_t x = 0; x < mask.width(); ++x) {
      out(y, x) = mask(y, x) ? available(y, x)
                             : index.nearest(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)).value;
    }
  }
  return out;
}

/// Delaunay triangles over the known pixel positions, as index triples into
/// the row-major list of known pixels. Empty when the points are collinear
/// or fewer than three.
inline std::vector<std::array<std::size_t, 3>> delaunay_triangles(const SampleMask& mask) {
  namespace bp = boost::polygon;
  std::vector<bp::point_data<std::int32_t>> sites;
  sites.reserve(mask.count());
  for (std::size_t y = 0; y < mask.height(); ++y) {
    for (std::size_t x = 0; x < mask.width(); ++x) {
      if (mask(y, x)) sites.emplace_back(static_cast<std::int32_t>(x), static_cast<std::int32_t>(y));
    }
  }
  std::vector<std::array<std::size_t, 3>> triangles;
  if (sites.size() < 3) return triangles;
  bp::voronoi_diagram<double> vd;
  bp::construct_voronoi(sites.begin(), sites.end(), &vd);
  // Every Voronoi vertex is the circumcentre of a Delaunay cell; fan the
  // (possibly cocircular) cell into triangles.
  std::vector<std::size_t> ring;
  for (const auto& vertex : vd.vertices()) {
    ring.clear();
    const auto* first = vertex.incident_edge();
    const auto* edge = first;
    do {
      ring.push_back(edge->cell()->source_index());
      edge = edge->rot_next();
    } while (edge != first);
    for (std::size_t i = 1; i + 1 < ring.size(); ++i) triangles.push_back({ring[0], ring[i], ring[i + 1]});
  }
  return triangles;
}

/// Piecewise-linear interpolation on the Delaunay triangulation of the known
/// pixels; pixels outside the convex hull take the nearest known value.
/// With fewer than three non-collinear samples the whole image falls back to
/// nearest_fill and *used_fallback is set.
inline GrayImage linear_interpolate(const GrayImage& available, const SampleMask& mask,
                                    bool* used_fallback = nullptr) {
  require_same_shape(available, mask);
  detail::require_samples(mask);
  if (used_fallback) *used_fallback = false;

  const auto pts = detail::known_pixels(available, mask);
  const auto triangles = delaunay_triangles(mask);
  if (triangles.empty()) {
    if (used_fallback) *used_fallback = true;
    return nearest_fill(available, mask);
  }

  GrayImage out(available.width(), available.height());
  Grid<std::uint8_t> done(mask.rows(), mask.cols(), 0);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) {
      out[i] = available[i];
      done[i] = 1;
    }
  }

  auto orient = [](std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by, std::int64_t cx,
                   std::int64_t cy) { return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax); };

  for (const auto& t : triangles) {
    const auto& a = pts[t[0]];
    const auto& b = pts[t[1]];
    const auto& c = pts[t[2]];
    const std::int64_t area = orient(a.x, a.y, b.x, b.y, c.x, c.y);
    if (area == 0) continue;
    const std::int64_t x0 = std::min({a.x, b.x, c.x});
    const std::int64_t x1 = std::max({a.x, b.x, c.x});
    const std::int64_t y0 = std::min({a.y, b.y, c.y});
    const std::int64_t y1 = std::max({a.y, b.y, c.y});
    for (std::int64_t y = y0; y <= y1; ++y) {
      for (std::int64_t x = x0; x <= x1; ++x) {
        const auto yy = static_cast<std::size_t>(y);
        const auto xx = static_cast<std::size_t>(x);
        if (done(yy, xx)) continue;
        const std::int64_t wa = orient(x, y, b.x, b.y, c.x, c.y);
        const std::int64_t wb = orient(a.x, a.y, x, y, c.x, c.y);
        const std::int64_t wc = orient(a.x, a.y, b.x, b.y, x, y);
        const bool inside = area > 0 ? (wa >= 0 && wb >= 0 && wc >= 0) : (wa <= 0 && wb <= 0 && wc <= 0);
        if (!inside) continue;
        out(yy, xx) = (static_cast<double>(wa) * a.value + static_cast<double>(wb) * b.value +
                       static_cast<double>(wc) * c.value) /
                      static_cast<double>(area);
        done(yy, xx) = 1;
      }
    }
  }

  if (std::find(done.begin(), done.end(), std::uint8_t{0}) != done.end()) {
    const detail::NearestIndex index(pts, mask.width(), mask.height());
    for (std::size_t y = 0; y < mask.height(); ++y) {
      for (std::size_t x = 0; x < mask.width(); ++x) {
        if (!done(y, x)) {
          out(y, x) = index.nearest(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)).value;
        }
      }
    }
  }
  return out;
}

/// Pass band of the band-limited baseline: bins with min(k, M-k)/M and
/// min(l, N-l)/N both at most sqrt(density)/2.
inline Grid<std::uint8_t> band_limit_mask(std::size_t rows, std::size_t cols, double sample_density) {
  const double cutoff = std::sqrt(sample_density) / 2.0;
  Grid<std::uint8_t> band(rows, cols, 0);
  const double M = static_cast<double>(rows);
  const double N = static_cast<double>(cols);
  for (std::size_t k = 0; k < rows; ++k) {
    const double kt = M / 2.0 - std::abs(static_cast<double>(k) - M / 2.0);
    for (std::size_t l = 0; l < cols; ++l) {
      const double lt = N / 2.0 - std::abs(static_cast<double>(l) - N / 2.0);
      band(k, l) = (kt / M <= cutoff && lt / N <= cutoff) ? 1 : 0;
    }
  }
  return band;
}

/// Papoulis-Gerchberg iteration x <- lowpass(x + mask (s - x)) from x = 0.
/// Known pixels are not restored afterwards; the result is strictly band
/// limited.
inline GrayImage band_limited_reconstruct(const GrayImage& available, const SampleMask& mask,
                                          std::size_t iterations = 100) {
  require_same_shape(available, mask);
  detail::require_samples(mask);
  const std::size_t rows = available.rows();
  const std::size_t cols = available.cols();
  const Grid<std::uint8_t> band = band_limit_mask(rows, cols, density(mask));
  const double scale = 1.0 / static_cast<double>(rows * cols);

  std::vector<double> x(available.size(), 0.0);
  Grid<fft::cplx> work(rows, cols);
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      work[i] = mask[i] ? available[i] : x[i];
    }
    fft::transform_2d(work, fft::Direction::forward);
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (!band[i]) work[i] = 0.0;
    }
    fft::transform_2d(work, fft::Direction::inverse);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = work[i].real() * scale;
  }
  return GrayImage(available.width(), available.height(), std::move(x));
}

}  // namespace fsr
