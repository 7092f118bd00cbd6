#pragma once

// Numerical companions of the closed-form extremals: Rayleigh quotients on
// R^3, the PDE residual of the bubbles, asymptotics of the cutoff family,
// Nehari scales of the cutoff family, interpolation parameters and the
// weighted embedding constant of the ball.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/functional.hpp"
#include "kirchhoff/nehari.hpp"
#include "kirchhoff/profiles.hpp"
#include "kirchhoff/radial.hpp"

namespace kirchhoff {

namespace detail {

/// int_lo^hi f with 8-point Gauss on geometric panels of ratio at most 1.2.
template <class F>
double geometric_panels(F&& f, double lo, double hi) {
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(1.2))));
  const double ratio = std::pow(hi / lo, 1.0 / panels);
  double s = 0.0;
  double x0 = lo;
  for (int i = 0; i < panels; ++i) {
    const double x1 = i + 1 == panels ? hi : x0 * ratio;
    double cell = 0.0;
    for (std::size_t k = 0; k < kPointsPerCell; ++k) cell += kGaussWeights[k] * f(x0 + (x1 - x0) * kGaussNodes[k]);
    s += cell * (x1 - x0);
    x0 = x1;
  }
  return s;
}

/// int_0^R f(r) dr for an f that is integrable at 0 and regular on (0, R].
template <class F>
double integrate_ball(F&& f, double scale, double R) {
  const double lo = std::min(scale, R) * 1e-12;
  return geometric_panels(f, lo, R);
}

/// int_R^inf f(r) dr through r = R/s.
template <class F>
double integrate_tail(F&& f, double R) {
  return geometric_panels([&](double s) { return f(R / s) * R / (s * s); }, 1e-14, 1.0);
}

}  // namespace detail

struct RayleighEstimate {
  double value = 0.0;      // quotient over R^3 (ball part plus analytic-substitution tail)
  double truncated = 0.0;  // quotient over the ball of radius R only
  double tail_bound = 0.0; // omega_3 A^2 / R with U ~ A/r: bound on the dropped gradient mass
};

/// ||grad U||^2 / (int |x|^alpha U^{6+2 alpha})^{2/(6+2 alpha)} for U = U_{eps,alpha} on R^3.
inline RayleighEstimate rayleigh_quotient(double alpha, double eps, double R = 100.0) {
  require_alpha(alpha);
  if (!(R >= 10.0)) throw InvalidArgument("truncation radius must be at least 10");
  const ExtremalProfile U(eps, alpha);
  const double p = critical_exponent(alpha);
  const auto grad = [&](double r) {
    const double d = U.derivative(r);
    return d * d * r * r;
  };
  const auto crit = [&](double r) { return std::pow(r, 2.0 + alpha) * std::pow(U(r), p); };
  const double g_ball = kSphereArea * detail::integrate_ball(grad, eps, R);
  const double c_ball = kSphereArea * detail::integrate_ball(crit, eps, R);
  const double g_tail = kSphereArea * detail::integrate_tail(grad, R);
  const double c_tail = kSphereArea * detail::integrate_tail(crit, R);
  RayleighEstimate est;
  est.truncated = g_ball / std::pow(c_ball, 2.0 / p);
  est.value = (g_ball + g_tail) / std::pow(c_ball + c_tail, 2.0 / p);
  const double amp = U(R) * R;
  est.tail_bound = kSphereArea * amp * amp / R;
  return est;
}

/// Log-spaced radii on [1e-2, 1e2].
inline std::vector<double> default_pde_radii(std::size_t count = 201) {
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(i) / (count - 1));
  return r;
}

/// max_r |-Delta U - r^alpha U^{5+2 alpha}| / (r^alpha U^{5+2 alpha}) for U = U_{1,alpha},
/// with the radial Laplacian U'' + 2U'/r from closed-form derivatives.
inline double verify_extremal_pde(double alpha, const std::vector<double>& radii = default_pde_radii()) {
  require_alpha(alpha);
  const ExtremalProfile U(1.0, alpha);
  double worst = 0.0;
  for (double r : radii) {
    if (!(r >= 1e-2 && r <= 1e2)) throw InvalidArgument("sample radii must lie in [1e-2, 1e2]");
    const double lap = U.second_derivative(r) + 2.0 * U.derivative(r) / r;
    const double rhs = std::pow(r, alpha) * std::pow(U(r), 5.0 + 2.0 * alpha);
    worst = std::max(worst, std::fabs(-lap - rhs) / rhs);
  }
  return worst;
}

/// int_{R^3} |x|^{alpha2} U_{1,alpha1}^{6+2 alpha2}, the limit of the second
/// critical integral of the cutoff family.
inline double second_critical_limit(double alpha1, double alpha2) {
  require_alpha(alpha1);
  require_alpha(alpha2);
  const ExtremalProfile U(1.0, alpha1);
  const double p2 = critical_exponent(alpha2);
  const auto f = [&](double r) { return std::pow(r, 2.0 + alpha2) * std::pow(U(r), p2); };
  return kSphereArea * (detail::integrate_ball(f, 1.0, 1.0) + detail::integrate_tail(f, 1.0));
}

struct CutoffSample {
  double eps = 0.0;
  double grad = 0.0;   // ||u_eps||^2
  double crit1 = 0.0;  // int |x|^a1 u_eps^{6+2 a1}
  double crit2 = std::numeric_limits<double>::quiet_NaN();
};

struct AsymptoticsReport {
  double limit_grad = 0.0;  // S^{(3+a1)/(2+a1)}
  double limit_crit1 = 0.0;
  std::optional<double> limit_crit2;
  double slope_grad = 0.0;
  double slope_crit1 = 0.0;
  std::optional<double> slope_crit2;
  std::vector<CutoffSample> samples;
};

namespace detail {

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace detail

/// Integrals of the cutoff family u_{eps,alpha1} on the unit ball and the
/// log-log slopes of their deviations from the eps -> 0 limits.
inline AsymptoticsReport cutoff_asymptotics(double alpha1, std::optional<double> alpha2,
                                            const std::vector<double>& epsilons, const GridPtr& grid) {
  require_alpha(alpha1);
  if (alpha2) require_alpha(*alpha2);
  if (epsilons.size() < 4) throw InvalidArgument("asymptotic fit needs at least 4 values of eps");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0 && epsilons[i] <= 0.2)) throw InvalidArgument("eps values must lie in (0, 0.2]");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw InvalidArgument("eps values must decrease");
  }
  const double p1 = critical_exponent(alpha1);
  const WeightedQuadrature q_grad(grid, 2.0);
  const WeightedQuadrature q1(grid, 2.0 + alpha1);
  std::optional<WeightedQuadrature> q2;
  if (alpha2) q2.emplace(grid, 2.0 + *alpha2);

  AsymptoticsReport rep;
  rep.limit_grad = std::pow(best_constant(alpha1), (3.0 + alpha1) / (2.0 + alpha1));
  rep.limit_crit1 = rep.limit_grad;
  if (alpha2) rep.limit_crit2 = second_critical_limit(alpha1, *alpha2);

  std::vector<double> dg;
  std::vector<double> d1;
  std::vector<double> d2;
  for (double eps : epsilons) {
    const CutoffBubble u(eps, alpha1);
    CutoffSample s{.eps = eps};
    s.grad = q_grad.integrate_map([&](double r) {
      const double d = u.derivative(r);
      return d * d;
    });
    s.crit1 = q1.integrate_map([&](double r) { return std::pow(u(r), p1); });
    dg.push_back(std::fabs(s.grad - rep.limit_grad));
    d1.push_back(std::fabs(s.crit1 - rep.limit_crit1));
    if (alpha2) {
      const double p2 = critical_exponent(*alpha2);
      s.crit2 = q2->integrate_map([&](double r) { return std::pow(u(r), p2); });
      d2.push_back(std::fabs(s.crit2 - *rep.limit_crit2));
    }
    rep.samples.push_back(s);
  }
  rep.slope_grad = detail::loglog_slope(epsilons, dg);
  rep.slope_crit1 = detail::loglog_slope(epsilons, d1);
  if (alpha2) rep.slope_crit2 = detail::loglog_slope(epsilons, d2);
  return rep;
}

struct TEpsilonRow {
  double eps = 0.0;
  double t = 0.0;
  double fiber_energy = 0.0;
};

struct TEpsilonReport {
  std::vector<TEpsilonRow> rows;
  double t_min = 0.0;
  double t_max = 0.0;
  /// True when every eps is at most 0.2 and the bracket is [t_min, t_max] with
  /// 0 < t_min <= t_max < inf.  Larger eps lie outside the asymptotic regime.
  bool bracket_claimed = false;
};

inline TEpsilonReport t_epsilon_bounds(const KirchhoffFunctional& phi, const std::vector<double>& epsilons) {
  if (!(phi.params().lambda > 0.0)) throw InvalidArgument("t_eps bounds need lambda > 0");
  if (epsilons.empty()) throw InvalidArgument("eps list is empty");
  TEpsilonReport rep;
  rep.t_min = std::numeric_limits<double>::infinity();
  rep.t_max = 0.0;
  bool small = true;
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw InvalidArgument("eps values must be positive");
    small = small && eps <= 0.2;
    const RadialFunction u = CutoffBubble(eps, phi.params().alpha1).sample(phi.grid());
    const NehariResult r = project_nehari(phi, u);
    rep.rows.push_back({eps, r.t_u, r.fiber_energy});
    rep.t_min = std::min(rep.t_min, r.t_u);
    rep.t_max = std::max(rep.t_max, r.t_u);
  }
  rep.bracket_claimed = small && rep.t_min > 0.0 && std::isfinite(rep.t_max);
  return rep;
}

struct InterpolationParams {
  double gamma = 0.0;
  double xi = 0.0;
  double m_int = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double varsigma = 0.0;
  double C_tilde = 0.0;
};

inline double interpolation_m_max(double gamma, double xi) {
  return critical_exponent(gamma) * (2.0 + xi) / (2.0 + gamma);
}

inline InterpolationParams interpolation_params(double gamma, double xi, double m_int) {
  if (!(xi > -2.0)) throw InvalidArgument("xi must exceed -2");
  if (!(gamma > xi)) throw InvalidArgument("gamma must exceed xi");
  const double m_max = interpolation_m_max(gamma, xi);
  if (!(m_int > 0.0 && m_int <= m_max)) throw InvalidArgument("m_int must lie in (0, 2*(gamma)(2+xi)/(2+gamma)]");
  const double pg = critical_exponent(gamma);
  const double px = critical_exponent(xi);
  InterpolationParams ip{.gamma = gamma, .xi = xi, .m_int = m_int};
  ip.theta = px / pg;
  ip.C_tilde = std::pow(kSphereArea, 0.5 * (ip.theta - 1.0));
  ip.delta = (xi * pg - gamma * m_int) / (pg - m_int);
  ip.varsigma = m_int / px;
  return ip;
}

struct EmbeddingEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// inf ||u||^2 / ||u||^2_{L^p(B; r^beta)} by the normalized nonlinear inverse
/// iteration u <- K^{-1}(r^beta |u|^{p-2} u) / ||.||, which increases the
/// weighted norm on the unit H^1 sphere.
inline EmbeddingEstimate estimate_embedding_constant(double p, double beta, const GridPtr& grid,
                                                     int max_iters = 500, double tol = 1e-13) {
  if (!(beta > -2.0)) throw InvalidArgument("beta must exceed -2");
  if (!(p >= 1.0 && p <= critical_exponent(beta))) throw InvalidArgument("p must lie in [1, 6+2beta]");
  const WeightedQuadrature q(grid, 2.0 + beta);
  const auto value_of = [&](const RadialFunction& u) {
    const double s = q.integrate(u, [p](double x) { return std::pow(std::fabs(x), p); });
    return h1_norm_sq(u) / std::pow(s, 2.0 / p);
  };
  RadialFunction u = RadialFunction::sample(grid, [](double r) { return 1.0 - r * r; });
  u *= 1.0 / h1_norm(u);
  EmbeddingEstimate est;
  est.value = value_of(u);
  est.trace.push_back(est.value);
  std::vector<double> load(u.size());
  for (int it = 1; it <= max_iters; ++it) {
    std::fill(load.begin(), load.end(), 0.0);
    q.accumulate_load(u, 1.0, load, [p](double x) { return x == 0.0 ? 0.0 : std::pow(std::fabs(x), p - 2.0) * x; });
    RadialFunction w = solve_stiffness(grid, load);
    w *= 1.0 / h1_norm(w);
    const double v = value_of(w);
    u = std::move(w);
    est.iterations = it;
    est.trace.push_back(v);
    const bool done = std::fabs(v - est.value) <= tol * v;
    est.value = v;
    if (done) {
      est.converged = true;
      break;
    }
  }
  return est;
}

}  // namespace kirchhoff
