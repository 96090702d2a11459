#pragma once

// Dimension estimators for finite point clouds: dyadic box counting (upper
// Minkowski) and greedy disk packing, each followed by a log-log fit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "motionlab/error.hpp"
#include "motionlab/ifs.hpp"
#include "motionlab/point.hpp"

namespace motionlab {

enum class ScaleKind { Dyadic, Packing };

struct ScaleCount {
  double scale;       // k for dyadic boxes of side 2^{-k}; δ for packing disks
  std::size_t count;
};

struct ScaleCounts {
  ScaleKind kind = ScaleKind::Dyadic;
  std::vector<ScaleCount> entries;
  std::size_t cloud_size = 0;
  std::size_t distinct_points = 0;

  /// Regression abscissa: k, or log2(1/δ).
  double x(const ScaleCount& e) const { return kind == ScaleKind::Dyadic ? e.scale : -std::log2(e.scale); }
};

struct DimensionEstimate {
  double value = 0.0;
  double x_lo = 0.0;  // window in regression abscissa (k or log2 1/δ)
  double x_hi = 0.0;
  std::size_t scales_used = 0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::vector<double> local_slopes;
  /// min of local slopes: a lower-dimension diagnostic, not an estimator.
  double lower_diagnostic = 0.0;
};

inline constexpr double kSaturationExponent = 0.8;
inline constexpr int kMaxDyadicLevel = 52;

/// Auto: drop the two coarsest scales and every scale whose count exceeds
/// cloud_size^saturation. Range: keep scales with abscissa in [lo, hi].
struct WindowSpec {
  bool automatic = true;
  double saturation = kSaturationExponent;
  double lo = 0.0;
  double hi = 0.0;

  static WindowSpec autodetect(double saturation = kSaturationExponent) { return {true, saturation, 0.0, 0.0}; }
  static WindowSpec range(double lo, double hi) { return {false, kSaturationExponent, lo, hi}; }
};

namespace detail {

inline std::size_t count_distinct(std::span<const Point> pts) {
  std::vector<std::pair<double, double>> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.emplace_back(p.real(), p.imag());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

inline void require_cloud(std::span<const Point> pts) {
  if (pts.empty()) fail(ErrorKind::DegenerateCloud, "empty cloud");
  for (const auto& p : pts) {
    if (!is_finite(p)) fail(ErrorKind::DegenerateCloud, "cloud contains a non-finite point");
  }
}

}  // namespace detail

/// Number of half-open dyadic squares [m2^{-k},(m+1)2^{-k}) × [n2^{-k},(n+1)2^{-k})
/// meeting the cloud, for k = k_min..k_max. Raw coordinates, absolute lattice.
inline ScaleCounts dyadic_box_counts(const PointCloud& cloud, int k_min, int k_max) {
  const auto& pts = cloud.points;
  detail::require_cloud(pts);
  if (k_min < 0 || k_min > k_max) fail(ErrorKind::InvalidArgument, "need 0 <= k_min <= k_max");
  if (k_max > kMaxDyadicLevel) fail(ErrorKind::ScaleOverflow, "k_max above 52 exceeds double resolution");
  double extent = 0.0;
  for (const auto& p : pts) extent = std::max({extent, std::abs(p.real()), std::abs(p.imag())});
  if (std::ldexp(extent, k_max) >= 0x1.0p62) {
    fail(ErrorKind::ScaleOverflow, "cell indices overflow at k = " + std::to_string(k_max));
  }

  ScaleCounts out;
  out.kind = ScaleKind::Dyadic;
  out.cloud_size = pts.size();
  out.distinct_points = detail::count_distinct(pts);
  std::vector<std::pair<std::int64_t, std::int64_t>> cells(pts.size());
  for (int k = k_min; k <= k_max; ++k) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cells[i] = {static_cast<std::int64_t>(std::floor(std::ldexp(pts[i].real(), k))),
                  static_cast<std::int64_t>(std::floor(std::ldexp(pts[i].imag(), k)))};
    }
    std::sort(cells.begin(), cells.end());
    const auto distinct = static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
    out.entries.push_back({static_cast<double>(k), distinct});
  }
  return out;
}

/// Greedy packing count for each δ (descending): scan points in cloud order,
/// accept a disk of diameter δ centred at the point when it is disjoint from
/// all accepted disks (centre distance ≥ δ). A lower bound on the optimal
/// packing number. When `stop_above` is set, scales after the first count
/// exceeding it are skipped.
inline ScaleCounts packing_counts(const PointCloud& cloud, std::span<const double> diameters,
                                  std::optional<std::size_t> stop_above = std::nullopt) {
  const auto& pts = cloud.points;
  detail::require_cloud(pts);
  for (std::size_t i = 0; i < diameters.size(); ++i) {
    if (!(diameters[i] > 0.0) || !std::isfinite(diameters[i])) {
      fail(ErrorKind::InvalidArgument, "packing diameters must be positive");
    }
    if (i > 0 && !(diameters[i] < diameters[i - 1])) {
      fail(ErrorKind::InvalidArgument, "packing diameters must be strictly descending");
    }
  }
  ScaleCounts out;
  out.kind = ScaleKind::Packing;
  out.cloud_size = pts.size();
  out.distinct_points = detail::count_distinct(pts);

  struct CellHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const {
      return static_cast<std::size_t>(CounterRng::mix(static_cast<std::uint64_t>(c.first) * 0x9e3779b97f4a7c15ULL ^
                                                      static_cast<std::uint64_t>(c.second)));
    }
  };
  for (double delta : diameters) {
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<Point>, CellHash> grid;
    grid.reserve(1024);
    std::size_t accepted = 0;
    for (const auto& p : pts) {
      const auto cx = static_cast<std::int64_t>(std::floor(p.real() / delta));
      const auto cy = static_cast<std::int64_t>(std::floor(p.imag() / delta));
      bool clear = true;
      for (std::int64_t dx = -1; dx <= 1 && clear; ++dx) {
        for (std::int64_t dy = -1; dy <= 1 && clear; ++dy) {
          const auto it = grid.find({cx + dx, cy + dy});
          if (it == grid.end()) continue;
          for (const auto& q : it->second) {
            if (std::abs(p - q) < delta) {
              clear = false;
              break;
            }
          }
        }
      }
      if (clear) {
        grid[{cx, cy}].push_back(p);
        ++accepted;
      }
    }
    out.entries.push_back({delta, accepted});
    if (stop_above && accepted > *stop_above) break;
  }
  return out;
}

/// δ_i = 2^{-k} for k = k_min..k_max, descending.
inline std::vector<double> dyadic_diameters(int k_min, int k_max) {
  std::vector<double> d;
  for (int k = k_min; k <= k_max; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

namespace detail {

inline DimensionEstimate fit_loglog(const ScaleCounts& counts, const WindowSpec& window) {
  if (counts.distinct_points < 2) fail(ErrorKind::DegenerateCloud, "fewer than 2 distinct points");
  std::vector<ScaleCount> sorted = counts.entries;
  std::sort(sorted.begin(), sorted.end(),
            [&](const ScaleCount& a, const ScaleCount& b) { return counts.x(a) < counts.x(b); });

  std::vector<ScaleCount> used;
  if (window.automatic) {
    const double cap = std::pow(static_cast<double>(counts.cloud_size), window.saturation);
    for (std::size_t i = 2; i < sorted.size(); ++i) {
      if (static_cast<double>(sorted[i].count) > cap) break;
      used.push_back(sorted[i]);
    }
  } else {
    for (const auto& e : sorted) {
      const double x = counts.x(e);
      if (x >= window.lo - 1e-12 && x <= window.hi + 1e-12) used.push_back(e);
    }
  }
  if (used.size() < 3) {
    fail(ErrorKind::WindowTooSmall, "regression window has " + std::to_string(used.size()) + " scales, need 3");
  }

  const auto m = static_cast<double>(used.size());
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (const auto& e : used) {
    xs.push_back(counts.x(e));
    ys.push_back(std::log2(static_cast<double>(e.count)));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  DimensionEstimate est;
  est.value = sxy / sxx;
  est.x_lo = xs.front();
  est.x_hi = xs.back();
  est.scales_used = used.size();
  const double sse = std::max(0.0, syy - est.value * sxy);
  est.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  est.slope_stderr = std::sqrt(sse / (m - 2.0) / sxx);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) est.local_slopes.push_back((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]));
  est.lower_diagnostic = *std::min_element(est.local_slopes.begin(), est.local_slopes.end());
  return est;
}

}  // namespace detail

/// Least-squares slope of log2 N_k against k.
inline DimensionEstimate minkowski_estimate(const ScaleCounts& counts, const WindowSpec& window = {}) {
  if (counts.kind != ScaleKind::Dyadic) fail(ErrorKind::InvalidArgument, "minkowski_estimate needs dyadic counts");
  return detail::fit_loglog(counts, window);
}

/// Least-squares slope of log2 M_δ against log2(1/δ).
inline DimensionEstimate packing_estimate(const ScaleCounts& counts, const WindowSpec& window = {}) {
  if (counts.kind != ScaleKind::Packing) fail(ErrorKind::InvalidArgument, "packing_estimate needs packing counts");
  return detail::fit_loglog(counts, window);
}

}  // namespace motionlab
