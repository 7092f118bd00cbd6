#pragma once

// Closed-form best constants S_alpha of the weighted Sobolev inequality in
// R^3, the extremal bubbles U_{eps,alpha} that attain them, and the cutoff
// test functions built from the bubbles.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/radial.hpp"

namespace kirchhoff {

/// Gamma function by the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula below 1/2.
inline double lanczos_gamma(double z) {
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z));
  }
  z -= 1.0;
  double x = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) x += c[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

/// 2*(alpha) = 6 + 2 alpha, the critical exponent for the weight |x|^alpha.
constexpr double critical_exponent(double alpha) noexcept { return 6.0 + 2.0 * alpha; }

inline void require_alpha(double alpha) {
  if (!(alpha > -2.0)) throw InvalidArgument("alpha must exceed -2, got " + std::to_string(alpha));
}

/// Best constant S_alpha in
///   int |grad u|^2 >= S_alpha (int |x|^alpha |u|^{6+2 alpha})^{2/(6+2 alpha)}.
inline double best_constant(double alpha) {
  require_alpha(alpha);
  const double k = 2.0 + alpha;
  const double ga = lanczos_gamma((3.0 + alpha) / k);
  const double gb = lanczos_gamma(2.0 * (3.0 + alpha) / k);
  const double inner = kSphereArea / k * ga * ga / gb;
  return (3.0 + alpha) * std::pow(inner, k / (3.0 + alpha));
}

/// U_{eps,alpha}(r) = (3+alpha)^{1/(4+2alpha)} eps^{1/2} / (eps^k + r^k)^{1/k},
/// k = 2 + alpha.  Solves -Delta U = |x|^alpha U^{5+2alpha} in R^3.
class ExtremalProfile {
 public:
  ExtremalProfile(double epsilon, double alpha) : eps_(epsilon), alpha_(alpha), k_(2.0 + alpha) {
    require_alpha(alpha);
    if (!(epsilon > 0.0)) throw InvalidArgument("bubble scale epsilon must be positive");
    amp_ = std::pow(3.0 + alpha, 1.0 / (4.0 + 2.0 * alpha)) * std::sqrt(epsilon);
    eps_k_ = std::pow(epsilon, k_);
  }

  double epsilon() const noexcept { return eps_; }
  double alpha() const noexcept { return alpha_; }

  double operator()(double r) const { return amp_ * std::pow(eps_k_ + std::pow(r, k_), -1.0 / k_); }

  double derivative(double r) const {
    const double d = eps_k_ + std::pow(r, k_);
    return -amp_ * std::pow(r, k_ - 1.0) * std::pow(d, -1.0 / k_ - 1.0);
  }

  double second_derivative(double r) const {
    const double rk = std::pow(r, k_);
    const double d = eps_k_ + rk;
    return -amp_ * std::pow(r, k_ - 2.0) * std::pow(d, -1.0 / k_ - 2.0) * ((k_ - 1.0) * eps_k_ - 2.0 * rk);
  }

 private:
  double eps_;
  double alpha_;
  double k_;
  double amp_;
  double eps_k_;
};

/// Plateau function: 1 on [0, 1/3], 0 on [2/3, inf), quintic smoothstep between.
struct Plateau {
  static constexpr double kInner = 1.0 / 3.0;
  static constexpr double kOuter = 2.0 / 3.0;

  static double value(double r) {
    if (r <= kInner) return 1.0;
    if (r >= kOuter) return 0.0;
    const double s = (r - kInner) / (kOuter - kInner);
    return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
  }
  static double derivative(double r) {
    if (r <= kInner || r >= kOuter) return 0.0;
    const double s = (r - kInner) / (kOuter - kInner);
    return -30.0 * s * s * (1.0 - s) * (1.0 - s) / (kOuter - kInner);
  }
};

/// u_{eps,alpha} = plateau * U_{eps,alpha}, supported in the ball of radius 2/3.
class CutoffBubble {
 public:
  CutoffBubble(double epsilon, double alpha) : bubble_(epsilon, alpha) {}

  const ExtremalProfile& bubble() const noexcept { return bubble_; }
  double epsilon() const noexcept { return bubble_.epsilon(); }
  double alpha() const noexcept { return bubble_.alpha(); }

  double operator()(double r) const { return Plateau::value(r) * bubble_(r); }
  double derivative(double r) const {
    return Plateau::derivative(r) * bubble_(r) + Plateau::value(r) * bubble_.derivative(r);
  }

  RadialFunction sample(const GridPtr& grid) const {
    return RadialFunction::sample(grid, [this](double r) { return (*this)(r); });
  }

 private:
  ExtremalProfile bubble_;
};

/// v_0(r) = plateau(r) r^{-k}, 0 < k < 1/2: in H^1 but unbounded at the origin.
class SingularProbe {
 public:
  explicit SingularProbe(double k) : k_(k) {
    if (!(k > 0.0 && k < 0.5)) throw InvalidArgument("singular probe exponent must lie in (0, 1/2)");
  }
  double exponent() const noexcept { return k_; }
  double operator()(double r) const { return Plateau::value(r) * std::pow(r, -k_); }

  /// Nodal samples with the origin value clamped to the value at r_1.
  RadialFunction sample(const GridPtr& grid) const {
    return RadialFunction::sample(grid, [this](double r) { return (*this)(r); }, true);
  }

 private:
  double k_;
};

}  // namespace kirchhoff
