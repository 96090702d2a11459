#pragma once

// Contractive similarity systems z ↦ a·z + b: open-set validation, limit-set
// rendering and the similarity-dimension solver.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "motionlab/bisect.hpp"
#include "motionlab/error.hpp"
#include "motionlab/point.hpp"
#include "motionlab/rng.hpp"

namespace motionlab {

struct Similarity {
  Point a;  // ratio, 0 < |a| < 1
  Point b;  // translation

  Point operator()(Point z) const { return a * z + b; }
  double ratio() const { return std::abs(a); }
  Point fixed_point() const { return b / (1.0 - a); }
  Disk image(const Disk& d) const { return {(*this)(d.center), ratio() * d.radius}; }
};

class SimilarityIFS {
 public:
  SimilarityIFS(std::vector<Similarity> maps, Disk open_set, bool osc_verified = false)
      : maps_(std::move(maps)), open_set_(open_set), osc_verified_(osc_verified) {
    if (maps_.empty()) fail(ErrorKind::EmptySystem, "similarity system has no maps");
    for (const auto& m : maps_) {
      const double r = m.ratio();
      if (!(r > 0.0 && r < 1.0) || !is_finite(m.b)) {
        fail(ErrorKind::RatioOutOfRange, "map ratio |a| = " + std::to_string(r) + " is not in (0, 1)");
      }
    }
    if (!(open_set_.radius > 0.0) || !is_finite(open_set_.center)) {
      fail(ErrorKind::InvalidArgument, "open-set disk needs a positive radius");
    }
  }

  std::span<const Similarity> maps() const { return maps_; }
  const Disk& open_set() const { return open_set_; }
  std::size_t size() const { return maps_.size(); }
  bool osc_verified() const { return osc_verified_; }

  std::vector<double> ratios() const {
    std::vector<double> out;
    out.reserve(maps_.size());
    for (const auto& m : maps_) out.push_back(m.ratio());
    return out;
  }

 private:
  std::vector<Similarity> maps_;
  Disk open_set_;
  bool osc_verified_;
};

// ---------------------------------------------------------------------------
// Similarity dimension

inline constexpr double kSimDimRelTol = 1e-14;

/// Root bracket [lo, hi] of Σ ratio_j^s = c with the sum ≥ c at lo and ≤ c at hi.
/// Degenerates to [0, 0] when c ≥ count.
inline Bracket similarity_dimension_bracket(std::span<const double> ratios, double c = 1.0) {
  if (ratios.empty()) fail(ErrorKind::EmptySystem, "no ratios");
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidC, "c must be finite and > 0");
  for (double r : ratios) {
    if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::RatioOutOfRange, "ratio " + std::to_string(r) + " is not in (0, 1)");
  }
  if (c >= static_cast<double>(ratios.size())) return {0.0, 0.0};

  const auto excess = [&](double s) {
    double total = 0.0;
    for (double r : ratios) total += std::pow(r, s);
    return total - c;
  };
  // excess is strictly decreasing, positive at 0
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  return bisect_predicate([&](double s) { return excess(s) <= 0.0; }, lo, hi, kSimDimRelTol);
}

/// Unique s > 0 with Σ ratio_j^s = c; 0 when c ≥ count (the infimum of
/// {α > 0 : Σ ratio^α ≤ c} is then 0).
inline double similarity_dimension(std::span<const double> ratios, double c = 1.0) {
  return similarity_dimension_bracket(ratios, c).mid();
}

inline double similarity_dimension(const SimilarityIFS& ifs, double c = 1.0) {
  const auto r = ifs.ratios();
  return similarity_dimension(r, c);
}

// ---------------------------------------------------------------------------
// Open set condition for a disk

struct OscReport {
  struct Containment {
    std::size_t map;
    double slack;  // R − (|center' − w0| + |a|R); ≥ 0 when contained
  };
  struct Overlap {
    std::size_t i;
    std::size_t j;
    double gap;  // centre distance − sum of radii; > 0 when disjoint
  };

  bool ok = true;
  std::vector<Containment> containment;
  std::vector<Overlap> overlaps;  // only failing pairs
  Overlap tightest{0, 0, std::numeric_limits<double>::infinity()};
};

/// Containment is accepted up to a relative rounding slack of 1e-12·R.
inline constexpr double kContainmentSlack = 1e-12;

/// Checks γ_j(U) ⊂ U and pairwise disjoint images for the disk U, using the
/// exact image γ_j(D(w0, R)) = D(a_j w0 + b_j, |a_j| R).
inline OscReport check_open_set_disks(const SimilarityIFS& ifs) {
  OscReport report;
  const Disk& u = ifs.open_set();
  std::vector<Disk> images;
  images.reserve(ifs.size());
  for (std::size_t j = 0; j < ifs.size(); ++j) {
    const Disk img = ifs.maps()[j].image(u);
    images.push_back(img);
    const double slack = u.radius - (std::abs(img.center - u.center) + img.radius);
    report.containment.push_back({j, slack});
    if (slack < -kContainmentSlack * u.radius) report.ok = false;
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const double gap = std::abs(images[i].center - images[j].center) - (images[i].radius + images[j].radius);
      if (gap < report.tightest.gap) report.tightest = {i, j, gap};
      if (!(gap > 0.0)) {
        report.overlaps.push_back({i, j, gap});
        report.ok = false;
      }
    }
  }
  return report;
}

/// Copy of `ifs` flagged as satisfying the open set condition, if it does.
inline SimilarityIFS verified(const SimilarityIFS& ifs) {
  const bool ok = check_open_set_disks(ifs).ok;
  return SimilarityIFS({ifs.maps().begin(), ifs.maps().end()}, ifs.open_set(), ok);
}

// ---------------------------------------------------------------------------
// Rendering

struct CloudMeta {
  std::string source;
  std::string method;  // "det" or "chaos"
  std::uint64_t seed = 0;
  std::uint64_t size_param = 0;  // depth for det, count for chaos
};

struct PointCloud {
  std::vector<Point> points;
  CloudMeta meta;
};

struct Deterministic {
  int depth = 0;
};
struct ChaosGame {
  std::size_t count = 0;
  std::uint64_t seed = 42;
};
using RenderMethod = std::variant<Deterministic, ChaosGame>;

inline constexpr double kMaxDeterministicPoints = 1e8;
inline constexpr std::size_t kChaosBurnIn = 100;

/// Deterministic: every composition γ_{j1}∘…∘γ_{jk} applied to the fixed
/// point of the first map; the point for address (j1,…,jk) sits at index
/// j1·n^{k−1} + … + jk. Chaos game: uniformly random map choices starting
/// from the same fixed point, first kChaosBurnIn iterates discarded.
inline PointCloud render_limit_set(const SimilarityIFS& ifs, const RenderMethod& method) {
  PointCloud cloud;
  const Point seed_point = ifs.maps()[0].fixed_point();
  const std::size_t n = ifs.size();

  if (const auto* det = std::get_if<Deterministic>(&method)) {
    if (det->depth < 0) fail(ErrorKind::InvalidArgument, "depth must be >= 0");
    if (std::pow(static_cast<double>(n), det->depth) > kMaxDeterministicPoints) {
      fail(ErrorKind::ExplosionGuard, std::to_string(n) + "^" + std::to_string(det->depth) + " exceeds 1e8 points");
    }
    std::vector<Point> level{seed_point};
    for (int k = 0; k < det->depth; ++k) {
      std::vector<Point> next;
      next.reserve(level.size() * n);
      for (const auto& map : ifs.maps()) {
        for (const auto& z : level) next.push_back(map(z));
      }
      level = std::move(next);
    }
    cloud.points = std::move(level);
    cloud.meta = {"ifs", "det", 0, static_cast<std::uint64_t>(det->depth)};
    return cloud;
  }

  const auto& chaos = std::get<ChaosGame>(method);
  if (chaos.count == 0) fail(ErrorKind::InvalidArgument, "chaos game needs count >= 1");
  CounterRng rng(chaos.seed);
  cloud.points.reserve(chaos.count);
  Point z = seed_point;
  const auto maps = ifs.maps();
  for (std::size_t i = 0; i < chaos.count + kChaosBurnIn; ++i) {
    z = maps[rng.below(static_cast<std::uint32_t>(n))](z);
    if (i >= kChaosBurnIn) cloud.points.push_back(z);
  }
  cloud.meta = {"ifs", "chaos", chaos.seed, chaos.count};
  return cloud;
}

/// diam γ_{j1}∘…∘γ_{jk}(U) = diam U · Π |a_{ji}|.
inline double cell_diameter(const SimilarityIFS& ifs, std::span<const int> address) {
  double d = ifs.open_set().diameter();
  for (int j : address) {
    if (j < 0 || static_cast<std::size_t>(j) >= ifs.size()) {
      fail(ErrorKind::BadAddress, "map index " + std::to_string(j) + " out of range");
    }
    d *= ifs.maps()[static_cast<std::size_t>(j)].ratio();
  }
  return d;
}

}  // namespace motionlab
