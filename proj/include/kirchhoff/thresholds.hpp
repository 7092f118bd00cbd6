#pragma once

// Compactness levels below which Palais-Smale sequences of the energy converge,
// for each parameter regime, and the comparison of computed ground-state
// levels against them.

#include <cmath>
#include <limits>
#include <optional>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/extremals.hpp"
#include "kirchhoff/functional.hpp"
#include "kirchhoff/nehari.hpp"
#include "kirchhoff/profiles.hpp"

namespace kirchhoff {

struct ThresholdReport {
  Regime regime = Regime::MuZeroDegenerate;
  double level = 0.0;
  double a_term = 0.0;
  double b_term = 0.0;
  std::optional<double> nu_bar;
  std::optional<double> nu_tilde;
  std::optional<double> C_tilde;
  /// mu > 0 only: levels of the mu = 1 normal form are multiplied by this.
  std::optional<double> rescale;
  // Echoed inputs; alpha2 and mu only matter in the mu > 0 regime.
  double alpha1 = 0.0;
  double alpha2 = std::numeric_limits<double>::quiet_NaN();
  double a = 0.0;
  double b = 0.0;
  double mu = 0.0;
};

/// Level for one critical term (mu = 0, and mu < 0 where the second term helps):
///   (2+a1)/(2(3+a1)) a^{(3+a1)/(2+a1)} S^{(3+a1)/(2+a1)} + (1+a1)/(4(3+a1)) b^{(3+a1)/(1+a1)} S^{2(3+a1)/(1+a1)}.
inline ThresholdReport threshold_single(double alpha1, double a, double b) {
  if (!(alpha1 > -1.0)) throw InvalidArgument("alpha1 must exceed -1");
  if (!(a >= 0.0)) throw InvalidArgument("a must be nonnegative");
  if (!(b > 0.0)) throw InvalidArgument("b must be positive");
  const double S = best_constant(alpha1);
  const double e = (3.0 + alpha1) / (2.0 + alpha1);
  const double f = (3.0 + alpha1) / (1.0 + alpha1);
  ThresholdReport tr;
  tr.regime = a == 0.0 ? Regime::MuZeroDegenerate : Regime::MuZero;
  tr.a_term = a == 0.0 ? 0.0 : (2.0 + alpha1) / (2.0 * (3.0 + alpha1)) * std::pow(a, e) * std::pow(S, e);
  tr.b_term = (1.0 + alpha1) / (4.0 * (3.0 + alpha1)) * std::pow(b, f) * std::pow(S, 2.0 * f);
  tr.level = tr.a_term + tr.b_term;
  tr.alpha1 = alpha1;
  tr.a = a;
  tr.b = b;
  return tr;
}

struct NuRoots {
  double nu_bar = 0.0;
  double nu_tilde = 0.0;
  double residual_bar = 0.0;
  double residual_tilde = 0.0;
  double C_tilde = 0.0;
};

namespace detail {

/// Root of C ν^{e1} + ν^{e2} = rhs for ν > 0 (both exponents positive, so the
/// left side increases from 0).  Bisection down to adjacent doubles.
inline double increasing_power_root(double c, double e1, double e2, double rhs) {
  if (rhs == 0.0) return 0.0;
  const auto lhs = [&](double v) { return c * std::pow(v, e1) + std::pow(v, e2) - rhs; };
  double lo = 0.0;
  double hi = 1.0;
  while (lhs(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (lhs(mid) < 0.0) lo = mid; else hi = mid;
  }
  return std::fabs(lhs(lo)) < std::fabs(lhs(hi)) ? lo : hi;
}

}  // namespace detail

/// Roots of
///   C^{6+2a1} ν̄^{4+2a1} + ν̄^{4+2a2} = a S_{a2}^{3+a2},
///   C^{6+2a1} ν̃^{2+2a1} + ν̃^{2+2a2} = b S_{a2}^{3+a2},
/// with C the interpolation constant for (gamma, xi) = (a1, a2).
inline NuRoots solve_nu_roots(double alpha1, double alpha2, double a, double b) {
  if (!(alpha2 > -1.0)) throw InvalidArgument("alpha2 must exceed -1");
  if (!(alpha1 > alpha2)) throw InvalidArgument("alpha1 must exceed alpha2");
  if (!(a >= 0.0)) throw InvalidArgument("a must be nonnegative");
  if (!(b > 0.0)) throw InvalidArgument("b must be positive");
  const double theta = critical_exponent(alpha2) / critical_exponent(alpha1);
  const double C = std::pow(kSphereArea, 0.5 * (theta - 1.0));
  const double c = std::pow(C, 6.0 + 2.0 * alpha1);
  const double S3 = std::pow(best_constant(alpha2), 3.0 + alpha2);
  NuRoots r;
  r.C_tilde = C;
  r.nu_bar = detail::increasing_power_root(c, 4.0 + 2.0 * alpha1, 4.0 + 2.0 * alpha2, a * S3);
  r.nu_tilde = detail::increasing_power_root(c, 2.0 + 2.0 * alpha1, 2.0 + 2.0 * alpha2, b * S3);
  r.residual_bar = c * std::pow(r.nu_bar, 4.0 + 2.0 * alpha1) + std::pow(r.nu_bar, 4.0 + 2.0 * alpha2) - a * S3;
  r.residual_tilde =
      c * std::pow(r.nu_tilde, 2.0 + 2.0 * alpha1) + std::pow(r.nu_tilde, 2.0 + 2.0 * alpha2) - b * S3;
  return r;
}

/// Level for mu = 1: (2+a2)/(2(3+a2)) a ν̄^2 + (1+a2)/(4(3+a2)) b ν̃^4.
inline ThresholdReport threshold_double_positive(double alpha1, double alpha2, double a, double b) {
  const NuRoots r = solve_nu_roots(alpha1, alpha2, a, b);
  ThresholdReport tr;
  tr.regime = Regime::MuPositive;
  tr.a_term = (2.0 + alpha2) / (2.0 * (3.0 + alpha2)) * a * r.nu_bar * r.nu_bar;
  tr.b_term = (1.0 + alpha2) / (4.0 * (3.0 + alpha2)) * b * std::pow(r.nu_tilde, 4.0);
  tr.level = tr.a_term + tr.b_term;
  tr.nu_bar = r.nu_bar;
  tr.nu_tilde = r.nu_tilde;
  tr.C_tilde = r.C_tilde;
  tr.alpha1 = alpha1;
  tr.alpha2 = alpha2;
  tr.a = a;
  tr.b = b;
  tr.mu = 1.0;
  return tr;
}

/// Threshold for the regime of p.  For mu > 0 the substitution u = κ v with
/// κ = mu^{1/(2(a1-a2))} gives Phi(u) = c Phi_1(v), c = κ^{6+2a1}, where Phi_1
/// has mu = 1 and coefficients a κ^2/c, b κ^4/c.
inline ThresholdReport threshold_for(const ProblemParams& p) {
  p.validate();
  ThresholdReport tr;
  if (p.mu > 0.0) {
    const double kappa = std::pow(p.mu, 1.0 / (2.0 * (p.alpha1 - p.alpha2)));
    const double c = std::pow(kappa, critical_exponent(p.alpha1));
    tr = threshold_double_positive(p.alpha1, p.alpha2, p.a * kappa * kappa / c, p.b * std::pow(kappa, 4.0) / c);
    tr.a_term *= c;
    tr.b_term *= c;
    tr.level *= c;
    tr.rescale = c;
    tr.a = p.a;
    tr.b = p.b;
    tr.mu = p.mu;
  } else {
    tr = threshold_single(p.alpha1, p.a, p.b);
    tr.mu = p.mu;
    tr.regime = infer_regime(p);
  }
  return tr;
}

struct CompareReport {
  bool below = false;
  double margin = 0.0;
};

/// below = level_m < threshold (strict), margin = threshold - level_m.
inline CompareReport compare_report(const GroundStateResult& gs, const ThresholdReport& tr) {
  const ProblemParams& p = gs.params;
  const bool positive = tr.regime == Regime::MuPositive;
  bool match = p.alpha1 == tr.alpha1 && p.a == tr.a && p.b == tr.b && (p.mu > 0.0) == positive;
  if (positive) match = match && p.alpha2 == tr.alpha2 && p.mu == tr.mu;
  if (!match) throw InvalidArgument("ground state and threshold were computed for different parameters");
  return {gs.level_m < tr.level, tr.level - gs.level_m};
}

}  // namespace kirchhoff
