#pragma once

// Property checks tying constructed motions to the inequalities they must
// satisfy. Every check produces a CheckReport whose residuals are signed
// violation amounts: a sample passes when its residual is ≤ the tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "motionlab/dimest.hpp"
#include "motionlab/error.hpp"
#include "motionlab/format.hpp"
#include "motionlab/harnack.hpp"
#include "motionlab/ifs.hpp"
#include "motionlab/motion.hpp"
#include "motionlab/parallel.hpp"
#include "motionlab/point.hpp"
#include "motionlab/rng.hpp"

namespace motionlab {

using Evaluator = std::function<double(Point)>;

struct CheckRow {
  std::string param;
  double residual;
  double tolerance;
  bool passed;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  std::string worst_param;
  double worst_residual = -std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  double tolerance = 0.0;
  std::vector<CheckRow> rows;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;

  CheckReport(std::string check_name, double tol) : name(std::move(check_name)), tolerance(tol) {}

  void add(std::string param, double residual) {
    const bool ok = residual <= tolerance;
    if (residual > worst_residual || rows.empty()) {
      worst_residual = residual;
      worst_param = param;
    }
    passed = passed && ok;
    ++samples;
    rows.push_back({std::move(param), residual, tolerance, ok});
  }

  std::optional<double> metric(const std::string& key) const {
    for (const auto& [k, v] : metrics) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  std::string text() const {
    std::ostringstream os;
    os << "check: " << name << "\n"
       << "passed: " << (passed ? "true" : "false") << "\n"
       << "samples: " << samples << "\n"
       << "tolerance: " << fmt17(tolerance) << "\n"
       << "worst: " << worst_param << " residual=" << fmt17(worst_residual) << "\n";
    for (const auto& [k, v] : metrics) os << k << ": " << fmt17(v) << "\n";
    for (const auto& n : notes) os << "note: " << n << "\n";
    return os.str();
  }

  std::string csv(bool header = true) const {
    std::ostringstream os;
    if (header) os << "check,param,residual,tolerance,passed\n";
    for (const auto& r : rows) {
      os << name << "," << r.param << "," << fmt17(r.residual) << "," << fmt17(r.tolerance) << ","
         << (r.passed ? "true" : "false") << "\n";
    }
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Sample grids

/// Deterministic sunflower (Vogel) spiral of `count` points in |λ| ≤ radius.
inline std::vector<Point> disk_grid(std::size_t count, double radius) {
  std::vector<Point> out;
  out.reserve(count);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double rho = radius * std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(count));
    out.push_back(std::polar(rho, golden * static_cast<double>(i)));
  }
  return out;
}

/// `count` equispaced points on |λ| = radius, starting at angle 0.
inline std::vector<Point> circle_points(std::size_t count, double radius, Point center = {0.0, 0.0}) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(center + std::polar(radius, 2.0 * kPi * static_cast<double>(i) / static_cast<double>(count)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mean-value checks

enum class MeanMode { Harmonic, Super, Sub };

inline constexpr std::size_t kCircleSamples = 360;

inline const char* mode_name(MeanMode mode) {
  switch (mode) {
    case MeanMode::Harmonic: return "harmonic";
    case MeanMode::Super: return "super";
    case MeanMode::Sub: return "sub";
  }
  return "?";
}

/// Trapezoid-rule circle mean of f over |λ − λ0| = radius.
inline double circle_mean(const Evaluator& f, Point center, double radius, std::size_t samples = kCircleSamples) {
  double total = 0.0;
  for (const auto& z : circle_points(samples, radius, center)) total += f(z);
  return total / static_cast<double>(samples);
}

namespace detail {

inline double mean_value_residual(const Evaluator& f, Point center, double radius, std::size_t samples,
                                  MeanMode mode) {
  if (samples < 64) fail(ErrorKind::InvalidArgument, "mean-value checks need at least 64 samples");
  if (!(radius > 0.0) || !(std::abs(center) + radius < 1.0)) {
    fail(ErrorKind::CircleOutsideDomain, "circle at " + lambda_label(center) + " radius " + shortest(radius) +
                                             " leaves the unit disk");
  }
  const double mean = circle_mean(f, center, radius, samples);
  const double value = f(center);
  switch (mode) {
    case MeanMode::Harmonic: return std::abs(mean - value);
    case MeanMode::Super: return mean - value;
    case MeanMode::Sub: return value - mean;
  }
  return 0.0;
}

}  // namespace detail

/// Harmonic: |mean − f(λ0)| ≤ tol. Super: mean ≤ f(λ0) + tol. Sub: mean ≥ f(λ0) − tol.
inline CheckReport check_mean_value(const Evaluator& f, Point center, double radius, std::size_t samples, double tol,
                                    MeanMode mode) {
  CheckReport report(std::string("mean-value-") + mode_name(mode), tol);
  report.add(lambda_label(center) + " r=" + shortest(radius), detail::mean_value_residual(f, center, radius, samples, mode));
  return report;
}

/// Same check at every grid centre with radius min(radius, (1 − |λ0|)/2).
inline CheckReport check_mean_value_grid(const Evaluator& f, std::span<const Point> centers, double radius,
                                         std::size_t samples, double tol, MeanMode mode) {
  CheckReport report(std::string("mean-value-") + mode_name(mode), tol);
  for (const auto& c : centers) {
    const double rr = std::min(radius, 0.5 * (1.0 - std::abs(c)));
    report.add(lambda_label(c) + " r=" + shortest(rr), detail::mean_value_residual(f, c, rr, samples, mode));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Harnack checks

/// u(λ1)/u(λ2) ∈ [1/τ, τ] on random pairs drawn uniformly from |λ| ≤ radius.
inline CheckReport check_harnack_pairs(const Evaluator& u, std::size_t pairs, std::uint64_t seed, double radius,
                                       double slack) {
  CheckReport report("harnack-pairs", slack);
  CounterRng rng(seed);
  const auto draw = [&] {
    const double rho = radius * std::sqrt(rng.uniform());
    return std::polar(rho, 2.0 * kPi * rng.uniform());
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    const Point l1 = draw();
    const Point l2 = draw();
    const double tau = harnack_distance(l1, l2);
    const double ratio = u(l1) / u(l2);
    report.add(lambda_label(l1) + ";" + lambda_label(l2), Interval{1.0 / tau, tau}.violation(ratio));
  }
  return report;
}

inline constexpr double kDiameterInflation = 1.1;

/// Diameter Harnack inequality for S = {f_0(address)}: with M̂ = 1.1 × the
/// largest sampled diam f_λ(S),
///   log(M̂/diam f_λ(S)) / log(M̂/diam S) ∈ [((ρ−|λ|)/(ρ+|λ|))^t, ((ρ+|λ|)/(ρ−|λ|))^t].
/// t = 1 is the inequality itself; t < 1 tightens it (t = 0 collapses the
/// interval to {1}) and serves as a negative control.
inline CheckReport check_diameter_harnack(const AstalaMotion& m, std::span<const std::vector<int>> addresses,
                                          std::span<const Point> lambda_grid, double rho, double tightening = 1.0,
                                          double tol = 1e-12) {
  if (!(rho > 0.0 && rho < 1.0)) fail(ErrorKind::InvalidArgument, "rho must lie in (0, 1)");
  const auto diameter_at = [&](Point lambda) {
    std::vector<Point> pts;
    for (const auto& a : addresses) pts.push_back(motion_point_image(m, a, lambda));
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
    }
    return d;
  };
  const double base = diameter_at({0.0, 0.0});
  if (addresses.size() < 2 || !(base > 0.0)) fail(ErrorKind::DegenerateSubset, "S needs at least 2 distinct points");

  std::vector<double> diam;
  double big = base;
  for (const auto& l : lambda_grid) {
    if (!(std::abs(l) < rho)) fail(ErrorKind::PointOutsideDisk, "grid point " + lambda_label(l) + " not in D(0, rho)");
    diam.push_back(diameter_at(l));
    big = std::max(big, diam.back());
  }
  const double M = kDiameterInflation * big;
  CheckReport report(tightening == 1.0 ? "diameter-harnack" : "diameter-harnack-tightened", tol);
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double a = std::abs(lambda_grid[i]);
    const double ratio = std::log(M / diam[i]) / std::log(M / base);
    const double tau = std::pow((rho + a) / (rho - a), tightening);
    report.add(lambda_label(lambda_grid[i]), Interval{1.0 / tau, tau}.violation(ratio));
  }
  report.metrics.push_back({"M_hat", M});
  report.metrics.push_back({"diam_S", base});
  report.notes.push_back("M_hat is 1.1 x the largest sampled diameter; any upper bound keeps log(M/diam) positive");
  return report;
}

/// For each k and 8 points λ on |λ| = k:
///   1/s(λ) − 1/2 ∈ [(1/K)(1/s(0) − 1/2), K(1/s(0) − 1/2)],  K = (1+k)/(1−k).
template <class Motion>
CheckReport check_distortion_sandwich(const Motion& m, std::span<const double> k_grid, double slack = 1e-9) {
  CheckReport report("distortion-sandwich", slack);
  const double base = 1.0 / dimension_at(m, {0.0, 0.0}) - 0.5;
  for (double k : k_grid) {
    if (!(k >= 0.0 && k <= 0.95)) fail(ErrorKind::KOutOfRange, "sandwich k grid must lie in [0, 0.95]");
    const double K = (1.0 + k) / (1.0 - k);
    for (const auto& l : circle_points(8, k)) {
      const double excess = 1.0 / dimension_at(m, l) - 0.5;
      report.add("k=" + shortest(k) + " " + lambda_label(l), Interval{base / K, base * K}.violation(excess));
    }
  }
  return report;
}

inline constexpr const char* kQuestionCaveat =
    "reciprocal dimension of these motions is an explicit inf of harmonic functions, so the inequality is a theorem "
    "here; this run exercises the machinery and cannot bear on the open question";

/// Compares s(0) with max_{|λ|=1/2} s(λ) over `circle_samples` equispaced points.
template <class Motion>
CheckReport run_qsh_experiment(const Motion& m, std::size_t circle_samples, double tol = 1e-12) {
  if (circle_samples < 16) fail(ErrorKind::InvalidArgument, "need at least 16 circle samples");
  CheckReport report("qsh-experiment", tol);
  const double s0 = dimension_at(m, {0.0, 0.0});
  double best = -std::numeric_limits<double>::infinity();
  Point arg{};
  for (const auto& l : circle_points(circle_samples, 0.5)) {
    const double s = dimension_at(m, l);
    if (s > best) {
      best = s;
      arg = l;
    }
  }
  report.add("max at " + lambda_label(arg), s0 - best);
  report.metrics.push_back({"dim_at_0", s0});
  report.metrics.push_back({"max_dim_on_circle", best});
  report.metrics.push_back({"margin", best - s0});
  report.notes.push_back(kQuestionCaveat);
  return report;
}

// ---------------------------------------------------------------------------
// Estimator against closed form

/// A fixed similarity system viewed as a motion that does not move.
struct ConstantMotion {
  SimilarityIFS ifs;
};

inline double dimension_at(const ConstantMotion& m, Point) { return similarity_dimension(m.ifs); }
inline PointCloud render_motion(const ConstantMotion& m, Point, const RenderMethod& method) {
  return render_limit_set(m.ifs, method);
}

struct EstimatorConfig {
  int k_min = 0;
  int k_max = 40;
  WindowSpec window = WindowSpec::autodetect();
  bool packing = false;
};

struct EstimatorSample {
  Point lambda{};
  double theory = 0.0;
  DimensionEstimate box;
  std::optional<DimensionEstimate> packing;
};

struct EstimatorCheck {
  CheckReport report{"estimator-vs-theory", 0.0};
  std::vector<EstimatorSample> samples;

  /// `re,im,dim_theory,dim_est[,dim_pack]`
  std::string sweep_csv() const {
    std::ostringstream os;
    const bool pack = !samples.empty() && samples.front().packing.has_value();
    os << "re,im,dim_theory,dim_est" << (pack ? ",dim_pack" : "") << "\n";
    for (const auto& s : samples) {
      os << fmt17(s.lambda.real()) << "," << fmt17(s.lambda.imag()) << "," << fmt17(s.theory) << ","
         << fmt17(s.box.value);
      if (s.packing) os << "," << fmt17(s.packing->value);
      os << "\n";
    }
    return os.str();
  }
};

inline EstimatorSample estimate_cloud(const PointCloud& cloud, const EstimatorConfig& cfg) {
  EstimatorSample s;
  s.box = minkowski_estimate(dyadic_box_counts(cloud, cfg.k_min, cfg.k_max), cfg.window);
  if (cfg.packing) {
    const auto cap = static_cast<std::size_t>(std::pow(static_cast<double>(cloud.points.size()), cfg.window.saturation));
    const auto diams = dyadic_diameters(cfg.k_min, cfg.k_max);
    s.packing = packing_estimate(packing_counts(cloud, diams, cap), cfg.window);
  }
  return s;
}

/// |box estimate of the rendered f_λ(E) − closed-form dimension| ≤ tol for every λ.
template <class Motion>
EstimatorCheck check_estimator_vs_theory(const Motion& m, std::span<const Point> lambda_grid,
                                         const RenderMethod& render, const EstimatorConfig& est, double tol,
                                         unsigned jobs = 1) {
  for (const auto& l : lambda_grid) require_in_disk(l);
  EstimatorCheck out;
  out.report = CheckReport("estimator-vs-theory", tol);
  out.samples = parallel_map<EstimatorSample>(lambda_grid.size(), jobs, [&](std::size_t i) {
    EstimatorSample s = estimate_cloud(render_motion(m, lambda_grid[i], render), est);
    s.lambda = lambda_grid[i];
    s.theory = dimension_at(m, lambda_grid[i]);
    return s;
  });
  for (const auto& s : out.samples) out.report.add(lambda_label(s.lambda), std::abs(s.box.value - s.theory));
  return out;
}

}  // namespace motionlab
