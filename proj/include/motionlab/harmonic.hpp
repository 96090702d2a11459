#pragma once

// Closed-form harmonic functions on the unit disk and finite lower envelopes
// of positive ones.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "motionlab/error.hpp"
#include "motionlab/point.hpp"

namespace motionlab {

/// Margin the value at the origin must clear before a function counts as positive.
inline constexpr double kPositivityMargin = 1e-6;
/// Boundary samples used by positivity certification.
inline constexpr int kPositivitySamples = 720;

/// A harmonic function on the unit disk given in closed form.
///
/// Every representable form is the real part of a polynomial F with real
/// constant term, so `completion(λ) = h(λ) + i·h̃(λ)` with h̃(0) = 0 is always
/// available and `conjugate()` never fails.
class HarmonicFn {
 public:
  /// λ ↦ alpha·Re λ + beta·Im λ + gamma
  struct Affine {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
  };
  /// r e^{iθ} ↦ c0 + Σ_{m≥1} r^m (c_m cos mθ + d_m sin mθ); cos_coeffs[0] is c_1.
  struct TrigPoly {
    double c0 = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
  };
  struct Scaled {
    double weight = 1.0;
    std::shared_ptr<const HarmonicFn> inner;
  };
  struct Sum {
    std::vector<HarmonicFn> terms;
  };
  using Form = std::variant<Affine, TrigPoly, Scaled, Sum>;

  HarmonicFn() : form_(Affine{}) {}

  static HarmonicFn affine(double alpha, double beta, double gamma) {
    return HarmonicFn(Affine{alpha, beta, gamma});
  }
  static HarmonicFn constant(double c) { return affine(0.0, 0.0, c); }
  static HarmonicFn trigpoly(double c0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs = {}) {
    return HarmonicFn(TrigPoly{c0, std::move(cos_coeffs), std::move(sin_coeffs)});
  }
  static HarmonicFn scaled(double weight, HarmonicFn inner) {
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      fail(ErrorKind::InvalidArgument, "scaled harmonic weight must be finite and >= 0");
    }
    return HarmonicFn(Scaled{weight, std::make_shared<const HarmonicFn>(std::move(inner))});
  }
  static HarmonicFn sum(std::vector<HarmonicFn> terms) { return HarmonicFn(Sum{std::move(terms)}); }

  const Form& form() const { return form_; }

  /// h + i·h̃ at λ, with h̃(0) = 0. No domain check; the polynomial is entire.
  Point completion(Point lambda) const {
    return std::visit([&](const auto& f) { return completion_of(f, lambda); }, form_);
  }

  /// Value at λ, |λ| < 1.
  double operator()(Point lambda) const {
    require_in_disk(lambda);
    return completion(lambda).real();
  }

  /// Boundary value at e^{iθ} of the closed form (used for positivity).
  double boundary(double theta) const { return completion(std::polar(1.0, theta)).real(); }

  /// True when h(conj λ) = h(λ) holds identically (beta = 0, no sine terms).
  bool is_symmetric() const {
    return std::visit(
        [](const auto& f) -> bool {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Affine>) {
            return f.beta == 0.0;
          } else if constexpr (std::is_same_v<T, TrigPoly>) {
            return std::all_of(f.sin_coeffs.begin(), f.sin_coeffs.end(), [](double d) { return d == 0.0; });
          } else if constexpr (std::is_same_v<T, Scaled>) {
            return f.inner->is_symmetric();
          } else {
            return std::all_of(f.terms.begin(), f.terms.end(), [](const HarmonicFn& t) { return t.is_symmetric(); });
          }
        },
        form_);
  }

 private:
  explicit HarmonicFn(Form form) : form_(std::move(form)) {}

  static Point completion_of(const Affine& f, Point z) { return f.gamma + Point(f.alpha, -f.beta) * z; }

  static Point completion_of(const TrigPoly& f, Point z) {
    const std::size_t degree = std::max(f.cos_coeffs.size(), f.sin_coeffs.size());
    // Horner on c0 + Σ (c_m − i d_m) z^m
    Point acc{0.0, 0.0};
    for (std::size_t m = degree; m >= 1; --m) {
      const double c = m <= f.cos_coeffs.size() ? f.cos_coeffs[m - 1] : 0.0;
      const double d = m <= f.sin_coeffs.size() ? f.sin_coeffs[m - 1] : 0.0;
      acc = (acc + Point(c, -d)) * z;
    }
    return acc + f.c0;
  }

  static Point completion_of(const Scaled& f, Point z) { return f.weight * f.inner->completion(z); }

  static Point completion_of(const Sum& f, Point z) {
    Point acc{0.0, 0.0};
    for (const auto& t : f.terms) acc += t.completion(z);
    return acc;
  }

  Form form_;
};

/// Harmonic conjugate h̃ normalized by h̃(0) = 0, as another closed form.
inline HarmonicFn conjugate(const HarmonicFn& f) {
  return std::visit(
      [](const auto& g) -> HarmonicFn {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, HarmonicFn::Affine>) {
          return HarmonicFn::affine(-g.beta, g.alpha, 0.0);
        } else if constexpr (std::is_same_v<T, HarmonicFn::TrigPoly>) {
          std::vector<double> cos_part(g.sin_coeffs.size());
          std::transform(g.sin_coeffs.begin(), g.sin_coeffs.end(), cos_part.begin(), [](double d) { return -d; });
          return HarmonicFn::trigpoly(0.0, std::move(cos_part), g.cos_coeffs);
        } else if constexpr (std::is_same_v<T, HarmonicFn::Scaled>) {
          return HarmonicFn::scaled(g.weight, conjugate(*g.inner));
        } else {
          std::vector<HarmonicFn> terms;
          terms.reserve(g.terms.size());
          for (const auto& t : g.terms) terms.push_back(conjugate(t));
          return HarmonicFn::sum(std::move(terms));
        }
      },
      f.form());
}

/// Lower bound estimate of f on the closed disk. Exact for a bare Affine
/// (gamma − |(alpha, beta)|); otherwise the minimum over equispaced boundary
/// samples, which controls the interior by the minimum principle.
inline double sampled_minimum(const HarmonicFn& f, int samples = kPositivitySamples) {
  if (const auto* a = std::get_if<HarmonicFn::Affine>(&f.form())) {
    return a->gamma - std::hypot(a->alpha, a->beta);
  }
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    lo = std::min(lo, f.boundary(2.0 * kPi * i / samples));
  }
  return lo;
}

/// Rounding slack allowed below zero on the boundary samples.
inline constexpr double kBoundarySlack = 1e-12;

/// A harmonic function certified positive on the open disk: boundary samples
/// are nonnegative (up to kBoundarySlack) and the value at the origin, which is
/// the boundary mean, clears the margin. The minimum principle then gives
/// h > 0 throughout 𝔻. Sampled, so a heuristic for trig polynomials.
class PositiveHarmonic {
 public:
  static PositiveHarmonic certify(HarmonicFn f, double margin = kPositivityMargin) {
    const double lo = sampled_minimum(f);
    const double center = f.completion(Point{0.0, 0.0}).real();
    if (!(lo >= -kBoundarySlack) || !(center >= margin)) {
      fail(ErrorKind::NonPositiveHarmonic, "boundary minimum " + std::to_string(lo) + ", value at 0 " +
                                               std::to_string(center) + " (margin " + std::to_string(margin) + ")");
    }
    return PositiveHarmonic(std::move(f), lo);
  }

  const HarmonicFn& fn() const { return fn_; }
  double sampled_min() const { return sampled_min_; }
  double operator()(Point lambda) const { return fn_(lambda); }

 private:
  PositiveHarmonic(HarmonicFn f, double lo) : fn_(std::move(f)), sampled_min_(lo) {}

  HarmonicFn fn_;
  double sampled_min_;
};

/// Finite lower envelope u = min_j h_j of positive harmonic functions.
class InfHarmonicFn {
 public:
  explicit InfHarmonicFn(std::vector<PositiveHarmonic> members) : members_(std::move(members)) {
    if (members_.empty()) fail(ErrorKind::InvalidArgument, "inf-harmonic envelope needs at least one member");
  }

  static InfHarmonicFn of(std::vector<HarmonicFn> fns) {
    std::vector<PositiveHarmonic> members;
    members.reserve(fns.size());
    for (auto& f : fns) members.push_back(PositiveHarmonic::certify(std::move(f)));
    return InfHarmonicFn(std::move(members));
  }

  std::span<const PositiveHarmonic> members() const { return members_; }

  double operator()(Point lambda) const {
    require_in_disk(lambda);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& m : members_) lo = std::min(lo, m.fn().completion(lambda).real());
    return lo;
  }

 private:
  std::vector<PositiveHarmonic> members_;
};

inline double eval_harmonic(const HarmonicFn& f, Point lambda) { return f(lambda); }
inline double eval_inf_harmonic(const InfHarmonicFn& u, Point lambda) { return u(lambda); }

}  // namespace motionlab
