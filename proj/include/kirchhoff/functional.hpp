#pragma once

// Energy functional of the double weighted critical Kirchhoff problem
//
//   -(a + b ||u||^2) Delta u = |x|^a1 |u|^{4+2a1} u + mu |x|^a2 |u|^{4+2a2} u
//                              + lambda |x|^beta |u|^{q-2} u      in B,
//
// restricted to radial H^1_0(B), with h(r) = r^beta and f(s) = |s|^{q-2} s.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/profiles.hpp"
#include "kirchhoff/radial.hpp"

namespace kirchhoff {

struct ProblemParams {
  double a = 0.0;
  double b = 1.0;
  double mu = 0.0;
  double lambda = 1.0;
  double alpha1 = 0.0;
  double alpha2 = -0.5;
  double beta = 0.0;

  void validate() const {
    if (!(b > 0.0)) throw InvalidArgument("b must be positive");
    if (!(a >= 0.0)) throw InvalidArgument("a must be nonnegative");
    if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be nonnegative");
    if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
    if (!(alpha2 > -2.0)) throw InvalidArgument("alpha2 must exceed -2");
    if (!(alpha1 > alpha2)) throw InvalidArgument("alpha1 must exceed alpha2");
    if (!std::isfinite(alpha1)) throw InvalidArgument("alpha1 must be finite");
    if (!(beta > -2.0) || !std::isfinite(beta)) throw InvalidArgument("beta must exceed -2");
  }

  bool operator==(const ProblemParams&) const = default;
};

/// f(s) = |s|^{q-2} s, F(s) = |s|^q / q.
struct NonlinearityModel {
  double q = 5.0;

  void validate(const ProblemParams& p) const {
    if (!(q > 4.0)) throw InvalidArgument("q must exceed 4");
    if (!(q < 6.0 + 2.0 * p.beta)) throw InvalidArgument("q must be below the critical exponent 6 + 2 beta");
  }

  bool operator==(const NonlinearityModel&) const = default;
};

struct EnergyBreakdown {
  double kinetic_a = 0.0;     // a/2 ||u||^2
  double kirchhoff_b = 0.0;   // b/4 ||u||^4
  double crit1 = 0.0;         // int |x|^a1 |u|^{6+2a1} / (6+2a1)
  double crit2 = 0.0;         // mu int |x|^a2 |u|^{6+2a2} / (6+2a2)
  double perturbation = 0.0;  // lambda int |x|^beta |u|^q / q
  double total = 0.0;
};

/// The raw integrals that fix Phi(t u) for every t >= 0.
struct FiberIntegrals {
  double norm_sq = 0.0;  // ||u||^2
  double crit1 = 0.0;    // int |x|^a1 |u|^{6+2a1}
  double crit2 = 0.0;    // int |x|^a2 |u|^{6+2a2}
  double pert = 0.0;     // int |x|^beta |u|^q
};

enum class Regime { MuZeroDegenerate, MuZero, MuPositive, MuNegative };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::MuZeroDegenerate: return "mu_zero_degenerate";
    case Regime::MuZero: return "mu_zero";
    case Regime::MuPositive: return "mu_positive";
    case Regime::MuNegative: return "mu_negative";
  }
  return "unknown";
}

inline Regime regime_from_string(std::string_view s) {
  if (s == "mu_zero_degenerate") return Regime::MuZeroDegenerate;
  if (s == "mu_zero") return Regime::MuZero;
  if (s == "mu_positive") return Regime::MuPositive;
  if (s == "mu_negative") return Regime::MuNegative;
  throw InvalidArgument("unknown regime '" + std::string(s) + "'");
}

inline Regime infer_regime(const ProblemParams& p) {
  if (p.mu > 0.0) return Regime::MuPositive;
  if (p.mu < 0.0) return Regime::MuNegative;
  return p.a == 0.0 ? Regime::MuZeroDegenerate : Regime::MuZero;
}

namespace detail {

/// |x|^e, by repeated multiplication when e is a small nonnegative integer.
struct AbsPower {
  explicit AbsPower(double exponent) : e(exponent) {
    if (e >= 0.0 && e <= 32.0 && e == std::floor(e)) n = static_cast<int>(e);
  }
  double operator()(double x) const {
    const double ax = std::fabs(x);
    if (n < 0) return std::pow(ax, e);
    double r = 1.0;
    double b = ax;
    for (int k = n; k > 0; k >>= 1) {
      if (k & 1) r *= b;
      b *= b;
    }
    return r;
  }
  double e;
  int n = -1;
};

/// x -> |x|^{e-1} x
struct SignedPower {
  explicit SignedPower(double exponent) : abs(exponent - 1.0) {}
  double operator()(double x) const { return x == 0.0 ? 0.0 : abs(x) * x; }
  AbsPower abs;
};

}  // namespace detail

/// Phi_{a,mu} on a fixed grid.  Quadratures for the three weights are built
/// once; the object is immutable and can be shared between threads.
class KirchhoffFunctional {
 public:
  KirchhoffFunctional(GridPtr grid, ProblemParams p, NonlinearityModel nl)
      : grid_(std::move(grid)),
        p_(p),
        nl_(nl),
        q1_((p.validate(), nl.validate(p), grid_), 2.0 + p.alpha1),
        q2_(grid_, 2.0 + p.alpha2),
        qb_(grid_, 2.0 + p.beta) {}

  const GridPtr& grid() const noexcept { return grid_; }
  const ProblemParams& params() const noexcept { return p_; }
  const NonlinearityModel& nonlinearity() const noexcept { return nl_; }

  double exponent1() const noexcept { return critical_exponent(p_.alpha1); }
  double exponent2() const noexcept { return critical_exponent(p_.alpha2); }

  FiberIntegrals integrals(const RadialFunction& u) const {
    FiberIntegrals f;
    f.norm_sq = h1_norm_sq(u);
    f.crit1 = power_integral(q1_, u, exponent1());
    if (p_.mu != 0.0) f.crit2 = power_integral(q2_, u, exponent2());
    if (p_.lambda != 0.0) f.pert = power_integral(qb_, u, nl_.q);
    return f;
  }

  /// Breakdown of Phi(t u) from the integrals of u.
  EnergyBreakdown energy_at(const FiberIntegrals& f, double t = 1.0) const {
    const double p1 = exponent1();
    const double p2 = exponent2();
    const double t2 = t * t;
    EnergyBreakdown e;
    e.kinetic_a = 0.5 * p_.a * t2 * f.norm_sq;
    e.kirchhoff_b = 0.25 * p_.b * t2 * t2 * f.norm_sq * f.norm_sq;
    e.crit1 = std::pow(t, p1) * f.crit1 / p1;
    e.crit2 = p_.mu == 0.0 ? 0.0 : p_.mu * std::pow(t, p2) * f.crit2 / p2;
    e.perturbation = p_.lambda == 0.0 ? 0.0 : p_.lambda * std::pow(t, nl_.q) * f.pert / nl_.q;
    e.total = e.kinetic_a + e.kirchhoff_b - e.crit1 - e.crit2 - e.perturbation;
    return e;
  }

  EnergyBreakdown energy(const RadialFunction& u) const { return energy_at(integrals(u)); }

  /// <Phi'(u), v>.
  double pairing(const RadialFunction& u, const RadialFunction& v) const {
    u.check_same(v);
    const double coeff = p_.a + p_.b * h1_norm_sq(u);
    double s = coeff * h1_inner(u, v);
    s -= q1_.integrate_against(u, v, detail::SignedPower(exponent1() - 1.0));
    if (p_.mu != 0.0) s -= p_.mu * q2_.integrate_against(u, v, detail::SignedPower(exponent2() - 1.0));
    if (p_.lambda != 0.0) s -= p_.lambda * qb_.integrate_against(u, v, detail::SignedPower(nl_.q - 1.0));
    return s;
  }

  /// H^1_0 representative g of Phi'(u): <grad g, grad v> = <Phi'(u), v>.
  RadialFunction riesz_gradient(const RadialFunction& u) const {
    std::vector<double> load(u.size(), 0.0);
    q1_.accumulate_load(u, 1.0, load, detail::SignedPower(exponent1() - 1.0));
    if (p_.mu != 0.0) q2_.accumulate_load(u, p_.mu, load, detail::SignedPower(exponent2() - 1.0));
    if (p_.lambda != 0.0) qb_.accumulate_load(u, p_.lambda, load, detail::SignedPower(nl_.q - 1.0));
    // (a + b||u||^2) K u is the stiffness part of the load; K^{-1} of it is u itself.
    RadialFunction g = solve_stiffness(grid_, load);
    g *= -1.0;
    g.axpy(p_.a + p_.b * h1_norm_sq(u), u);
    return g;
  }

 private:
  static double power_integral(const WeightedQuadrature& q, const RadialFunction& u, double e) {
    return q.integrate(u, detail::AbsPower(e));
  }

  GridPtr grid_;
  ProblemParams p_;
  NonlinearityModel nl_;
  WeightedQuadrature q1_;
  WeightedQuadrature q2_;
  WeightedQuadrature qb_;
};

inline EnergyBreakdown energy(const RadialFunction& u, const ProblemParams& p, const NonlinearityModel& nl) {
  return KirchhoffFunctional(u.grid_ptr(), p, nl).energy(u);
}

inline double pairing(const RadialFunction& u, const RadialFunction& v, const ProblemParams& p,
                      const NonlinearityModel& nl) {
  return KirchhoffFunctional(u.grid_ptr(), p, nl).pairing(u, v);
}

inline RadialFunction riesz_gradient(const RadialFunction& u, const ProblemParams& p,
                                     const NonlinearityModel& nl) {
  return KirchhoffFunctional(u.grid_ptr(), p, nl).riesz_gradient(u);
}

// ---------------------------------------------------------------------------
// Assumption checker for the model family.

struct AssumptionCheck {
  std::string name;
  bool passed = false;
  std::string message;
};

struct AssumptionReport {
  Regime regime = Regime::MuZeroDegenerate;
  std::vector<AssumptionCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
  const AssumptionCheck* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace detail

/// Evaluates the hypotheses on h and f, closed form for h = r^beta and
/// f(s) = |s|^{q-2}s, plus the regime row constraints.  Never throws.
inline AssumptionReport check_assumptions(const ProblemParams& p, const NonlinearityModel& nl, Regime regime) {
  using detail::fmt;
  AssumptionReport rep;
  rep.regime = regime;
  auto add = [&rep](std::string name, bool ok, std::string msg) {
    rep.checks.push_back({std::move(name), ok, std::move(msg)});
  };
  const double q = nl.q;
  const double crit_beta = 6.0 + 2.0 * p.beta;

  {
    const bool ok = p.b > 0.0 && p.a >= 0.0 && p.alpha1 > p.alpha2 && p.alpha2 > -2.0;
    add("basic", ok,
        ok ? "a >= 0, b > 0, alpha1 > alpha2 > -2"
           : "need a >= 0, b > 0, alpha1 > alpha2 > -2 (a=" + fmt(p.a) + ", b=" + fmt(p.b) +
                 ", alpha1=" + fmt(p.alpha1) + ", alpha2=" + fmt(p.alpha2) + ")");
  }
  add("(h)", p.beta > -2.0, "h(r) = r^beta with beta = " + fmt(p.beta) + (p.beta > -2.0 ? "" : " <= -2"));
  add("lambda>0", p.lambda > 0.0,
      p.lambda > 0.0 ? "lambda = " + fmt(p.lambda)
                     : "lambda = 0: reference mode only, the infimum is not attained");

  bool regime_ok = false;
  switch (regime) {
    case Regime::MuZeroDegenerate: regime_ok = p.a == 0.0 && p.mu == 0.0; break;
    case Regime::MuZero: regime_ok = p.mu == 0.0; break;
    case Regime::MuPositive: regime_ok = p.mu > 0.0; break;
    case Regime::MuNegative: regime_ok = p.mu < 0.0; break;
  }
  add("regime", regime_ok,
      std::string(to_string(regime)) + (regime_ok ? " matches" : " does not match") + " a=" + fmt(p.a) +
          ", mu=" + fmt(p.mu));

  const auto alpha_check = [&](std::string_view which, double value) {
    add(std::string(which) + ">-1", value > -1.0, std::string(which) + " = " + fmt(value));
  };

  const auto f123 = [&] {
    add("(f1)", q > 4.0 && q < crit_beta,
        "need 4 < q < 6+2beta = " + fmt(crit_beta) + ", q = " + fmt(q));
    add("(f2)", q > 4.0 && q < crit_beta, "tau = q must lie in (4, " + fmt(crit_beta) + ")");
    add("(f3)", q > 4.0, "f(s)/|s|^3 = |s|^{q-4} sgn s nondecreasing needs q > 4");
  };

  // beta sub-rows of the a = 0 blocks: (f4) is only required when beta > 0
  // and tau <= 2(2+beta).
  const auto beta_row = [&] {
    const double border = 2.0 * (2.0 + p.beta);
    if (p.beta > -1.0 && p.beta <= 0.0) {
      add("beta-row", true, "-1 < beta <= 0");
    } else if (p.beta > 0.0 && q > border) {
      add("beta-row", true, "beta > 0, tau > 2(2+beta) = " + fmt(border));
    } else if (p.beta > 0.0) {
      const bool f4 = q > 4.0 + 2.0 * p.beta;
      add("(f4)", f4,
          "beta > 0 and tau <= 2(2+beta) require (f4): q > 4+2beta = " + fmt(4.0 + 2.0 * p.beta) +
              ", q = " + fmt(q));
    } else {
      add("beta-row", false, "beta = " + fmt(p.beta) + " <= -1 is outside every row");
    }
  };

  switch (regime) {
    case Regime::MuZeroDegenerate:
      alpha_check("alpha1", p.alpha1);
      f123();
      beta_row();
      break;
    case Regime::MuZero:
      alpha_check("alpha1", p.alpha1);
      f123();
      add("lambda>lambda*", p.lambda > 0.0,
          "existence for lambda above a non-constructive lambda*; use an empirical sweep");
      break;
    case Regime::MuPositive:
      alpha_check("alpha2", p.alpha2);
      f123();
      add("lambda>lambda*", p.lambda > 0.0,
          "existence for lambda above a non-constructive lambda*; use an empirical sweep");
      break;
    case Regime::MuNegative: {
      alpha_check("alpha1", p.alpha1);
      const double zeta = std::max(4.0, 6.0 + 2.0 * p.alpha2);
      const bool above = q > zeta;
      add("(f5)", above && q < crit_beta,
          "need zeta = max{4, 6+2alpha2} = " + fmt(zeta) + " < q < " + fmt(crit_beta) + ", q = " + fmt(q));
      add("(f6)", above && q < crit_beta, "tau = q must lie in (" + fmt(zeta) + ", " + fmt(crit_beta) + ")");
      add("(f7)", above, "f(s)/|s|^{zeta-1} nondecreasing needs q > zeta = " + fmt(zeta));
      if (p.a == 0.0) {
        beta_row();
      } else {
        add("lambda>lambda_bar", p.lambda > 0.0,
            "existence for lambda above a non-constructive lambda_bar; use an empirical sweep");
      }
      break;
    }
  }
  return rep;
}

}  // namespace kirchhoff
