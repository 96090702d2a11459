#pragma once

// Shared fixtures for the test suites: the standard test motions and small
// oracles that recompute quantities without going through the library code
// paths they check.

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "motionlab/motionlab.hpp"

#define EXPECT_ML_ERROR(stmt, expected_kind)                                        \
  do {                                                                              \
    bool thrown_ = false;                                                           \
    try {                                                                           \
      (void)(stmt);                                                                 \
    } catch (const ::motionlab::Error& e_) {                                        \
      thrown_ = true;                                                               \
      EXPECT_EQ(e_.kind(), (expected_kind)) << e_.what();                           \
    }                                                                               \
    EXPECT_TRUE(thrown_) << "expected " << ::motionlab::error_name(expected_kind);  \
  } while (0)

namespace testsupport {

using namespace motionlab;

// n = 10, h ≡ 1
inline AstalaMotion const_motion() { return build_astala_motion(HarmonicFn::constant(1.0), 10); }
// n = 10, h = 1 + Re λ
inline AstalaMotion affine_motion() { return build_astala_motion(HarmonicFn::affine(1.0, 0.0, 1.0), 10); }
// n = 12, h = 1.5 + 0.5 r cos θ + 0.3 r² cos 2θ + 0.2 r sin θ
inline AstalaMotion trig_motion() {
  return build_astala_motion(HarmonicFn::trigpoly(1.5, {0.5, 0.3}, {0.2}), 12);
}
// members u = 3/2 and u = 3/2 + Re λ, n = 10 each
inline CompositeMotion composite_pair() {
  return build_prescribed_motion(InfHarmonicFn::of({HarmonicFn::constant(1.5), HarmonicFn::affine(1.0, 0.0, 1.5)}),
                                 std::vector<int>{10, 10});
}
// d ≡ 2/3 with a single n = 1000 component
inline CompositeMotion composite_two_thirds() {
  return build_prescribed_motion(InfHarmonicFn::of({HarmonicFn::constant(1.5)}), std::vector<int>{1000});
}

/// Applies `fn` to every standard test motion.
template <class Fn>
void for_each_test_motion(Fn&& fn) {
  fn("const", const_motion());
  fn("affine", affine_motion());
  fn("trig", trig_motion());
  fn("composite-pair", composite_pair());
  fn("composite-two-thirds", composite_two_thirds());
}

/// Closed-form dimension log 2 / log 3 of the middle-thirds Cantor set.
inline const double kCantorDim = std::log(2.0) / std::log(3.0);

inline SimilarityIFS cantor_ifs() {
  return SimilarityIFS({{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}}, Disk{{0.5, 0.0}, 0.5});
}

/// Newton iteration in long double on log Σ r^s − log c.
inline double oracle_similarity_dimension(const std::vector<double>& ratios, double c = 1.0) {
  long double s = 1.0L;
  for (int it = 0; it < 200; ++it) {
    long double f = 0.0L, df = 0.0L;
    for (double r : ratios) {
      const long double p = std::pow(static_cast<long double>(r), s);
      f += p;
      df += p * std::log(static_cast<long double>(r));
    }
    const long double step = (std::log(f) - std::log(static_cast<long double>(c))) / (df / f);
    long double next = s - step;
    if (next < 0.0L) next = s / 2.0L;
    if (std::fabs(next - s) < 1e-18L) return static_cast<double>(next);
    s = next;
  }
  return static_cast<double>(s);
}

/// Distinct dyadic cells at level k, via an ordered set and a direct scale.
inline std::size_t oracle_box_count(const std::vector<Point>& pts, int k) {
  std::set<std::pair<long long, long long>> cells;
  const long double scale = std::pow(2.0L, k);
  for (const auto& p : pts) {
    cells.insert({static_cast<long long>(std::floor(p.real() * scale)),
                  static_cast<long long>(std::floor(p.imag() * scale))});
  }
  return cells.size();
}

/// Greedy packing by an all-pairs scan.
inline std::size_t oracle_packing_count(const std::vector<Point>& pts, double delta) {
  std::vector<Point> accepted;
  for (const auto& p : pts) {
    bool clear = true;
    for (const auto& q : accepted) {
      if (std::abs(p - q) < delta) {
        clear = false;
        break;
      }
    }
    if (clear) accepted.push_back(p);
  }
  return accepted.size();
}

/// Reciprocal dimension of an Astala motion from the value of h.
inline double oracle_reciprocal_dim(double h_value, int n) {
  return h_value + 0.5 + std::log(2.0) / (2.0 * std::log(static_cast<double>(n)));
}

}  // namespace testsupport
