#pragma once

// Closed-form quasiconformal distortion bounds. All take the distortion
// parameter k ∈ [0, 1) and use K = (1 + k)/(1 − k).

#include <algorithm>
#include <cmath>
#include <string>

#include "motionlab/error.hpp"
#include "motionlab/point.hpp"

namespace motionlab {

inline void require_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) fail(ErrorKind::KOutOfRange, "k = " + std::to_string(k) + " is not in [0, 1)");
}

inline double k_to_K(double k) {
  require_k(k);
  return (1.0 + k) / (1.0 - k);
}

inline double K_to_k(double K) {
  if (!(K >= 1.0) || !std::isfinite(K)) fail(ErrorKind::KOutOfRange, "K must be finite and >= 1");
  return (K - 1.0) / (K + 1.0);
}

/// Range of dim F(A) for a k-quasiconformal F, from
/// (1/K)(1/d − 1/2) ≤ 1/dim F(A) − 1/2 ≤ K(1/d − 1/2).
inline Interval dim_distortion_interval(double dim_a, double k) {
  if (!(dim_a > 0.0 && dim_a <= 2.0)) fail(ErrorKind::DimOutOfRange, "dim must lie in (0, 2]");
  const double K = k_to_K(k);
  const double excess = 1.0 / dim_a - 0.5;
  const double lo = 1.0 / (K * excess + 0.5);
  const double hi = 1.0 / (excess / K + 0.5);
  return {std::min(lo, 2.0), std::min(hi, 2.0)};
}

enum class AreaCase {
  ConformalOnA,   // μ_F = 0 a.e. on A
  ConformalOffA,  // μ_F = 0 a.e. off A
  General,
};

inline constexpr const char* kAreaNormalizationNote =
    "assumes F conformal off a compact set of logarithmic capacity at most 1 and F(z) = z + o(1) near infinity";

inline double area_distortion_bound(double area, double k, AreaCase which) {
  if (!(area >= 0.0) || !std::isfinite(area)) fail(ErrorKind::AreaOutOfRange, "area must be finite and >= 0");
  const double K = k_to_K(k);
  if (which == AreaCase::ConformalOffA) return K * area;
  if (area > kPi) fail(ErrorKind::AreaOutOfRange, "area above pi violates the capacity normalization");
  const double conformal_on = std::pow(kPi, 1.0 - 1.0 / K) * std::pow(area, 1.0 / K);
  return which == AreaCase::General ? K * conformal_on : conformal_on;
}

/// Upper bound 1 + k² on the Hausdorff dimension of a k-quasicircle.
inline double smirnov_quasicircle_bound(double k) {
  require_k(k);
  return 1.0 + k * k;
}

struct QuasisymmetricSpectrum {
  double lower;    // Δ(δ, k)
  double upper;    // Δ*(δ, k)
  bool clamped;    // k > √(1 − δ): upper saturates at 1
};

namespace detail {

/// 1 − ((k + l)/(1 + k l))² with l² = 1 − δ substituted exactly:
/// δ(1 − k²)/(1 + k l)².
inline double qs_delta(double delta, double k, double l) {
  const double denom = 1.0 + k * l;
  return delta * (1.0 - k * k) / (denom * denom);
}

}  // namespace detail

/// Dimension range of g(A) for a k-quasisymmetric g and dim A = δ.
inline QuasisymmetricSpectrum quasisymmetric_spectrum(double delta, double k) {
  if (!(delta > 0.0 && delta <= 1.0)) fail(ErrorKind::DeltaOutOfRange, "delta must lie in (0, 1]");
  require_k(k);
  const double l = std::sqrt(1.0 - delta);
  const double lower = detail::qs_delta(delta, k, l);
  if (k > l) return {lower, 1.0, true};
  return {lower, detail::qs_delta(delta, -k, l), false};
}

}  // namespace motionlab
