#pragma once

// Reference computations that do not go through the library's quadrature,
// root finders or gamma function.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "kirchhoff/radial.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kOmega3 = 4.0 * kPi;

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// B(m, n) = (m-1)!(n-1)!/(m+n-1)! for positive integers.
inline double beta_int(int m, int n) { return factorial(m - 1) * factorial(n - 1) / factorial(m + n - 1); }

/// Closed-form best constant through std::tgamma.
inline double best_constant(double alpha) {
  const double k = 2.0 + alpha;
  const double inner = kOmega3 / k * std::pow(std::tgamma((3.0 + alpha) / k), 2) / std::tgamma(2.0 * (3.0 + alpha) / k);
  return (3.0 + alpha) * std::pow(inner, k / (3.0 + alpha));
}

/// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12, int depth = 50) {
  const std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return rec(lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) + rec(mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// Bisection for a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Fourth-order central difference.
inline double diff4(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Fourth-order central second difference.
inline double diff4_second(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

/// Seeded random radial profiles: polynomial backgrounds vanishing at r = 1,
/// optionally with a Gaussian bump at a random radius, random sign and scale.
class ProfileGenerator {
 public:
  explicit ProfileGenerator(std::uint64_t seed) : rng_(seed) {}

  kirchhoff::RadialFunction operator()(const kirchhoff::GridPtr& grid) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    std::vector<double> c(5);
    for (double& x : c) x = unit(rng_);
    const double power = 1.0 + 2.0 * pos(rng_);
    const bool bump = pos(rng_) < 0.5;
    const double center = 0.8 * pos(rng_);
    const double width = 0.02 + 0.2 * pos(rng_);
    const double height = 3.0 * unit(rng_);
    const double scale = std::exp(2.0 * unit(rng_));
    return kirchhoff::RadialFunction::sample(grid, [&](double r) {
      double poly = 1.5;
      double rk = 1.0;
      for (double ck : c) {
        rk *= r;
        poly += 0.5 * ck * rk;
      }
      double v = (1.0 - std::pow(r, power)) * poly;
      if (bump) v += height * std::exp(-std::pow((r - center) / width, 2)) * (1.0 - r);
      return scale * v;
    });
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

/// Relative difference with a floor.
inline double rel(double x, double ref) { return std::fabs(x - ref) / std::max(std::fabs(ref), 1e-300); }

}  // namespace oracle
