#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "motionlab/bisect.hpp"
#include "motionlab/error.hpp"

namespace motionlab {

inline constexpr double kEnvelopeTLo = 1e-9;
inline constexpr double kEnvelopeTMax = 1e12;
inline constexpr double kEnvelopeRelTol = 1e-12;

/// v = sup{ t > 0 : Σ_j (1/c)·exp(−u_j / t) ≤ 1 }, the exponential instance of
/// the inf-cone implicit solver. The left side increases with t, so the set
/// of admissible t is an interval (0, v] and v is found by bisection.
/// Returns 0 when no t is admissible and +inf when every t is.
inline double infcone_envelope_solve(std::span<const double> u_values, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidC, "c must be finite and > 0");
  for (double u : u_values) {
    if (!(u >= 0.0) || !std::isfinite(u)) fail(ErrorKind::NegativeValue, "envelope inputs must be finite and >= 0");
  }
  const auto admissible = [&](double t) {
    double total = 0.0;
    for (double u : u_values) total += std::exp(-u / t) / c;
    return total <= 1.0;
  };

  if (!admissible(kEnvelopeTLo)) return 0.0;
  double lo = kEnvelopeTLo;
  double hi = 1.0;
  while (admissible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kEnvelopeTMax) return std::numeric_limits<double>::infinity();
  }
  const Bracket b = bisect_predicate([&](double t) { return !admissible(t); }, lo, hi, kEnvelopeRelTol);
  return b.lo;
}

}  // namespace motionlab
