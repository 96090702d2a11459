#pragma once

// Holomorphic motions of self-similar sets with prescribed dimension.
//
// AstalaMotion: n similarities γ_{j,λ}(z) = r·a(λ)·z + w_j with r = 1/√(2n),
// disjoint closed disks D̄(w_j, r) ⊂ 𝔻 and a(λ) = n^{−(h + i h̃)(λ)}, so that
//     1 / dim E_λ = h(λ) + 1/2 + log 2 / (2 log n).
//
// CompositeMotion: a finite union of scaled Astala motions in disjoint
// container disks; its dimension is the max over components.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "motionlab/error.hpp"
#include "motionlab/harmonic.hpp"
#include "motionlab/ifs.hpp"
#include "motionlab/point.hpp"
#include "motionlab/rng.hpp"

namespace motionlab {

inline constexpr double kPlacementMargin = 0.005;
inline constexpr int kMinAstalaMaps = 10;

inline double astala_radius(int n) { return 1.0 / std::sqrt(2.0 * n); }

/// log 2 / (2 log n): the gap between 1/dim and h + 1/2 for an n-map motion.
inline double astala_offset(int n) { return std::log(2.0) / (2.0 * std::log(static_cast<double>(n))); }

namespace detail {

inline void require_map_count(int n) {
  if (n < kMinAstalaMaps) fail(ErrorKind::InvalidArgument, "need n >= 10 maps, got " + std::to_string(n));
}

inline std::vector<Point> ring_packing(int n, double rp) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  double rho = 1.0 - rp;
  while (static_cast<int>(out.size()) < n && rho >= 0.0) {
    if (rho < rp) {
      out.emplace_back(0.0, 0.0);
      break;
    }
    const int capacity = static_cast<int>(std::floor(kPi / std::asin(rp / rho)));
    const int m = std::min(capacity, n - static_cast<int>(out.size()));
    for (int i = 0; i < m; ++i) out.push_back(std::polar(rho, 2.0 * kPi * i / m));
    rho -= 2.0 * rp;
  }
  return out;
}

inline std::vector<Point> hex_packing(int n, double rp) {
  const double pitch = 2.0 * rp;
  const double row = pitch * std::sqrt(3.0) / 2.0;
  const double limit = 1.0 - rp;
  const int span = static_cast<int>(std::ceil(1.0 / row)) + 1;
  std::vector<Point> pts;
  for (int jy = -span; jy <= span; ++jy) {
    const double y = jy * row;
    const double shift = (jy & 1) ? 0.5 * pitch : 0.0;
    for (int jx = -span; jx <= span; ++jx) {
      const Point w(jx * pitch + shift, y);
      if (std::abs(w) <= limit) pts.push_back(w);
    }
  }
  std::stable_sort(pts.begin(), pts.end(), [](Point p, Point q) { return std::abs(p) < std::abs(q); });
  if (static_cast<int>(pts.size()) > n) pts.resize(static_cast<std::size_t>(n));
  return pts;
}

}  // namespace detail

/// Checks pairwise distance ≥ 2r(1+margin) and |w| ≤ 1 − r(1+margin), up to a
/// relative rounding slack of 1e-12.
inline bool validate_placement(std::span<const Point> centers, double r, double margin = kPlacementMargin) {
  const double rp = r * (1.0 + margin);
  const double slack = 1e-12;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!is_finite(centers[i]) || std::abs(centers[i]) > (1.0 - rp) + slack) return false;
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      if (std::abs(centers[i] - centers[j]) < 2.0 * rp * (1.0 - slack)) return false;
    }
  }
  return true;
}

/// n centers for disjoint closed disks of radius 1/√(2n) inside 𝔻.
/// Concentric rings from the outside in (outer ring at radius 1 − r(1+ε)),
/// falling back to a clipped hexagonal lattice.
inline std::vector<Point> place_disks(int n) {
  detail::require_map_count(n);
  const double r = astala_radius(n);
  const double rp = r * (1.0 + kPlacementMargin);
  auto rings = detail::ring_packing(n, rp);
  if (static_cast<int>(rings.size()) == n && validate_placement(rings, r)) return rings;
  auto hex = detail::hex_packing(n, rp);
  if (static_cast<int>(hex.size()) == n && validate_placement(hex, r)) return hex;
  fail(ErrorKind::DiskPackingFailed, "could not place " + std::to_string(n) + " disks of radius " + std::to_string(r));
}

struct AstalaMotion {
  int n = 0;
  PositiveHarmonic h;
  HarmonicFn h_conj;
  std::vector<Point> centers;
  double r = 0.0;

  /// a(λ) = exp(−(h + i h̃)(λ)·log n); real and positive at λ = 0.
  Point a(Point lambda) const {
    require_in_disk(lambda);
    return std::exp(-h.fn().completion(lambda) * std::log(static_cast<double>(n)));
  }

  /// h(λ) + 1/2 + log 2/(2 log n)
  double reciprocal_dimension(Point lambda) const { return h(lambda) + 0.5 + astala_offset(n); }
};

/// Builds the motion for a positive harmonic h. Explicit centers override the
/// placement scheme but must pass the same validation (margin 0).
inline AstalaMotion build_astala_motion(const PositiveHarmonic& h, int n,
                                        std::optional<std::vector<Point>> centers = std::nullopt) {
  detail::require_map_count(n);
  const double r = astala_radius(n);
  std::vector<Point> w;
  if (centers) {
    if (static_cast<int>(centers->size()) != n) {
      fail(ErrorKind::BadArity, "expected " + std::to_string(n) + " centers, got " + std::to_string(centers->size()));
    }
    if (!validate_placement(*centers, r, 0.0)) {
      fail(ErrorKind::DiskPackingFailed, "supplied centers do not give disjoint disks inside the unit disk");
    }
    w = std::move(*centers);
  } else {
    w = place_disks(n);
  }
  return AstalaMotion{n, h, conjugate(h.fn()), std::move(w), r};
}

inline AstalaMotion build_astala_motion(const HarmonicFn& h, int n) {
  return build_astala_motion(PositiveHarmonic::certify(h), n);
}

/// The IFS {γ_{j,λ}} with U = 𝔻; γ_{j,λ}(𝔻) ⊂ D(w_j, r) gives the open set condition.
inline SimilarityIFS motion_ifs_at(const AstalaMotion& m, Point lambda) {
  const Point ratio = m.r * m.a(lambda);
  std::vector<Similarity> maps;
  maps.reserve(m.centers.size());
  for (const auto& w : m.centers) maps.push_back({ratio, w});
  return SimilarityIFS(std::move(maps), Disk{{0.0, 0.0}, 1.0}, true);
}

inline double motion_dimension(const AstalaMotion& m, Point lambda) { return 1.0 / m.reciprocal_dimension(lambda); }

/// Fixed point of γ_{j,λ}: w_j / (1 − r·a(λ)).
inline Point motion_fixed_point(const AstalaMotion& m, int j, Point lambda) {
  if (j < 0 || j >= m.n) fail(ErrorKind::BadAddress, "map index " + std::to_string(j) + " out of range");
  return m.centers[static_cast<std::size_t>(j)] / (1.0 - m.r * m.a(lambda));
}

/// f_λ of the limit point with periodic address (j1, …, jk, j1, …, jk, …): the
/// fixed point of the composed similarity γ_{j1,λ}∘…∘γ_{jk,λ}.
inline Point motion_point_image(const AstalaMotion& m, std::span<const int> address, Point lambda) {
  if (address.empty()) fail(ErrorKind::BadAddress, "address is empty");
  for (int j : address) {
    if (j < 0 || j >= m.n) fail(ErrorKind::BadAddress, "map index " + std::to_string(j) + " out of range");
  }
  const SimilarityIFS ifs = motion_ifs_at(m, lambda);
  Similarity g{{1.0, 0.0}, {0.0, 0.0}};
  for (int j : address) {
    const Similarity& s = ifs.maps()[static_cast<std::size_t>(j)];
    g = {g.a * s.a, g.a * s.b + g.b};
  }
  return g.fixed_point();
}

// ---------------------------------------------------------------------------
// Composite motions

struct CompositeComponent {
  AstalaMotion motion;
  Disk container;  // component lives in container.radius·E_λ + container.center
};

struct CompositeMotion {
  std::vector<CompositeComponent> components;
  InfHarmonicFn target;      // prescribed reciprocal dimension u = 1/d
  double excess_bound = 0.0; // log 2 / (2 log min n_j)

  /// 1/d̂(λ) = min_j (h_j(λ) + 1/2 + log 2/(2 log n_j))
  double reciprocal_dimension(Point lambda) const {
    require_in_disk(lambda);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& c : components) lo = std::min(lo, c.motion.reciprocal_dimension(lambda));
    return lo;
  }
};

/// Container D(ζ_j, s_j) with ζ_j = 2^{−j}·3/4 and s_j = 2^{−j}/8.
inline Disk cascade_container(std::size_t j) {
  const double scale = std::ldexp(1.0, -static_cast<int>(j));
  return {{0.75 * scale, 0.0}, scale / 8.0};
}

/// Finite truncation of the prescribed-dimension union: member u_j of the
/// target yields h_j = u_j − 1/2, which must itself be positive.
inline CompositeMotion build_prescribed_motion(const InfHarmonicFn& target, std::span<const int> component_ns,
                                               const std::vector<std::optional<std::vector<Point>>>& centers = {}) {
  const auto members = target.members();
  if (members.size() != component_ns.size()) {
    fail(ErrorKind::BadArity, std::to_string(members.size()) + " target members but " +
                                  std::to_string(component_ns.size()) + " component sizes");
  }
  if (!centers.empty() && centers.size() != members.size()) {
    fail(ErrorKind::BadArity, "center overrides must match the component count");
  }
  std::vector<CompositeComponent> comps;
  int min_n = std::numeric_limits<int>::max();
  for (std::size_t j = 0; j < members.size(); ++j) {
    HarmonicFn hj = HarmonicFn::sum({members[j].fn(), HarmonicFn::constant(-0.5)});
    PositiveHarmonic positive = PositiveHarmonic::certify(std::move(hj));
    auto motion = build_astala_motion(positive, component_ns[j], centers.empty() ? std::nullopt : centers[j]);
    comps.push_back({std::move(motion), cascade_container(j)});
    min_n = std::min(min_n, component_ns[j]);
  }
  return CompositeMotion{std::move(comps), target, astala_offset(min_n)};
}

inline double composite_dimension(const CompositeMotion& cm, Point lambda) {
  return 1.0 / cm.reciprocal_dimension(lambda);
}

inline double dimension_at(const AstalaMotion& m, Point lambda) { return motion_dimension(m, lambda); }
inline double dimension_at(const CompositeMotion& cm, Point lambda) { return composite_dimension(cm, lambda); }

/// Renders f_λ of the limit set. For composites the chaos-game budget is
/// split evenly across components (each with its own derived seed) and each
/// component cloud is mapped into its container.
inline PointCloud render_motion(const AstalaMotion& m, Point lambda, const RenderMethod& method) {
  PointCloud cloud = render_limit_set(motion_ifs_at(m, lambda), method);
  cloud.meta.source = "astala n=" + std::to_string(m.n) + " lambda=" + to_string(lambda);
  return cloud;
}

inline PointCloud render_motion(const CompositeMotion& cm, Point lambda, const RenderMethod& method) {
  PointCloud out;
  const std::size_t k = cm.components.size();
  for (std::size_t j = 0; j < k; ++j) {
    RenderMethod part = method;
    if (auto* chaos = std::get_if<ChaosGame>(&part)) {
      const auto& base = std::get<ChaosGame>(method);
      chaos->count = base.count / k + (j < base.count % k ? 1 : 0);
      chaos->seed = CounterRng::mix(base.seed + j);
      if (chaos->count == 0) continue;
    }
    const auto& comp = cm.components[j];
    const PointCloud piece = render_limit_set(motion_ifs_at(comp.motion, lambda), part);
    for (const auto& z : piece.points) out.points.push_back(comp.container.radius * z + comp.container.center);
  }
  if (const auto* det = std::get_if<Deterministic>(&method)) {
    out.meta = {"", "det", 0, static_cast<std::uint64_t>(det->depth)};
  } else {
    const auto& chaos = std::get<ChaosGame>(method);
    out.meta = {"", "chaos", chaos.seed, chaos.count};
  }
  out.meta.source = "composite k=" + std::to_string(k) + " lambda=" + to_string(lambda);
  return out;
}

}  // namespace motionlab
