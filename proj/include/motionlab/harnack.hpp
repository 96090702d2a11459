#pragma once

#include <cmath>
#include <string>

#include "motionlab/error.hpp"
#include "motionlab/point.hpp"

namespace motionlab {

/// Pseudo-hyperbolic distance |λ1 − λ2| / |1 − conj(λ2)·λ1| on the unit disk.
inline double pseudo_hyperbolic(Point lambda1, Point lambda2) {
  require_in_disk(lambda1, "lambda1");
  require_in_disk(lambda2, "lambda2");
  return std::abs(lambda1 - lambda2) / std::abs(1.0 - std::conj(lambda2) * lambda1);
}

/// Harnack distance of the unit disk: the best constant τ with
/// 1/τ ≤ h(λ1)/h(λ2) ≤ τ for every positive harmonic h.
/// From the origin this is (1+|λ|)/(1−|λ|); Möbius invariance gives the rest.
inline double harnack_distance(Point lambda1, Point lambda2) {
  const double rho = pseudo_hyperbolic(lambda1, lambda2);
  return (1.0 + rho) / (1.0 - rho);
}

inline void require_nonnegative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    fail(ErrorKind::NegativeValue, std::string(what) + " must be finite and >= 0");
  }
}

/// Range of u(λ1) for any inf-harmonic u with u(λ2) = u0.
inline Interval harnack_interval(double u0, Point lambda1, Point lambda2) {
  require_nonnegative(u0, "u0");
  const double tau = harnack_distance(lambda1, lambda2);
  return {u0 / tau, u0 * tau};
}

/// Range of v(iy) for an inf-harmonic v built from symmetric members
/// (h(conj λ) = h(λ)) with v(0) = v0.
inline Interval sym_harnack_interval(double v0, double y) {
  require_nonnegative(v0, "v0");
  if (!(std::abs(y) < 1.0)) fail(ErrorKind::PointOutsideDisk, "y must lie in (-1, 1)");
  const double y2 = y * y;
  return {v0 * (1.0 - y2) / (1.0 + y2), v0 * (1.0 + y2) / (1.0 - y2)};
}

}  // namespace motionlab
