#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "motionlab/error.hpp"

namespace motionlab {

/// A point of the complex plane. Every coordinate type in the library is this.
using Point = std::complex<double>;

inline bool is_finite(Point z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline std::string to_string(Point z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

/// Throws PointOutsideDisk unless z is finite and |z| < 1.
inline void require_in_disk(Point z, const char* what = "lambda") {
  if (!is_finite(z) || std::abs(z) >= 1.0) {
    fail(ErrorKind::PointOutsideDisk, std::string(what) + " = " + to_string(z) + " is not in the open unit disk");
  }
}

/// Open disk D(center, radius).
struct Disk {
  Point center{};
  double radius = 1.0;

  double diameter() const { return 2.0 * radius; }
  bool contains_closed(Point z, double slack = 0.0) const {
    return std::abs(z - center) <= radius + slack;
  }
};

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
  /// Distance by which x falls outside the interval; <= 0 when inside.
  double violation(double x) const { return std::max(lo - x, x - hi); }
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace motionlab
