#pragma once

#include <cmath>
#include <cstddef>

namespace motionlab {

/// Bracket [lo, hi] around the sign change of a monotone predicate/function.
struct Bracket {
  double lo;
  double hi;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Bisection on a predicate that is false on [lo, t*) and true on (t*, hi]
/// (or the reverse when `increasing` is false). Stops once the bracket width
/// falls below rel_tol * |hi| (never below one ulp step). Returns the final
/// bracket; the caller picks lo or hi depending on which side it needs.
template <class Predicate>
Bracket bisect_predicate(Predicate&& holds_above, double lo, double hi, double rel_tol,
                         std::size_t max_iter = 4000) {
  for (std::size_t it = 0; it < max_iter; ++it) {
    if (hi - lo <= rel_tol * std::abs(hi)) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket is one ulp wide
    if (holds_above(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

/// Root of an increasing function f with f(lo) < 0 < f(hi).
template <class Fn>
Bracket bisect_increasing(Fn&& f, double lo, double hi, double rel_tol, std::size_t max_iter = 4000) {
  return bisect_predicate([&](double x) { return f(x) >= 0.0; }, lo, hi, rel_tol, max_iter);
}

}  // namespace motionlab
