// Acceptance checks.  Usage: acceptance [criterion ...]; with no arguments all
// ten run.  Each criterion prints indented detail lines followed by exactly
// one "PASS criterion N" or "FAIL criterion N" line.  Exit status is nonzero
// if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "kirchhoff/kirchhoff.hpp"
#include "oracles.hpp"

using namespace kirchhoff;

namespace {

// Tolerances, fixed here rather than read from anywhere.
constexpr double kC1RelTol = 1e-3;
constexpr double kC1ClosedFormTol = 1e-12;
constexpr double kC1Seconds = 10.0;
constexpr double kC2ResidualTol = 1e-6;
constexpr double kC2Seconds = 1.0;
constexpr double kC3SlopeTol = 0.3;
constexpr double kC3Seconds = 30.0;
constexpr double kC4Membership = 1e-8;
constexpr double kC4Scaling = 1e-10;
constexpr double kC4MaxSlack = 1e-12;
constexpr int kC4Directions = 200;
constexpr int kC4Samples = 64;
constexpr double kC5DualResidual = 1e-5;
constexpr double kC5Seconds = 120.0;
constexpr double kC6RelGap = 1e-2;
constexpr double kC7Gap = 0.05;
constexpr double kC8Ratio = 0.1;
constexpr double kC9Slack = 1e-12;
constexpr int kC9Functions = 100;
constexpr double kC10RelTol = 1e-3;

// Solver settings for criteria 5 and 6: the residual cap sits an order below
// the acceptance bound so a converged run clears it with room.
constexpr double kSolverAbsTol = 1e-6;
constexpr int kSolverMaxIters = 20000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class... Args>
void detail(const char* fmt, Args... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

bool verdict(int n, bool ok, const std::string& summary) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, summary.c_str());
  std::fflush(stdout);
  return ok;
}

struct Instance {
  const char* name;
  ProblemParams p;
  NonlinearityModel nl;
};

ProblemParams make(double a, double mu, double lambda, double alpha1, double alpha2) {
  ProblemParams p;
  p.a = a;
  p.b = 1;
  p.mu = mu;
  p.lambda = lambda;
  p.alpha1 = alpha1;
  p.alpha2 = alpha2;
  p.beta = 0;
  return p;
}

std::vector<Instance> regimes() {
  return {{"a=0 mu=0 lambda=1", make(0, 0, 1, 0, -0.5), {5}},
          {"a=1 mu=0 lambda=100", make(1, 0, 100, 0, -0.5), {5}},
          {"a=0 mu=1 lambda=100 alpha=(1,0)", make(0, 1, 100, 1, 0), {5}},
          {"a=0 mu=-0.05 lambda=1 alpha=(0,-0.5)", make(0, -0.05, 1, 0, -0.5), {5}}};
}

bool criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double alpha : {-1.5, -1.0, -0.5, 0.0, 1.0, 2.0}) {
    const double S = best_constant(alpha);
    const double R = rayleigh_quotient(alpha, 1.0, 100.0).value;
    const double rel = std::fabs(R - S) / S;
    worst = std::max(worst, rel);
    detail("alpha=%5.2f  S=%.12f  quotient=%.12f  rel=%.2e", alpha, S, R, rel);
  }
  const double closed = 3.0 * std::pow(std::numbers::pi / 2.0, 4.0 / 3.0);
  const double err0 = std::fabs(best_constant(0.0) - closed) / closed;
  const double elapsed = seconds_since(t0);
  detail("S_0 closed-form rel error %.2e, elapsed %.3f s", err0, elapsed);
  char buf[160];
  std::snprintf(buf, sizeof buf, "best constants vs quotient max rel %.2e (tol %.0e), S_0 rel %.1e, %.2f s", worst,
                kC1RelTol, err0, elapsed);
  return verdict(1, worst < kC1RelTol && err0 < kC1ClosedFormTol && elapsed < kC1Seconds, buf);
}

bool criterion2() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double alpha : {-1.0, 0.0, 2.0}) {
    const double r = verify_extremal_pde(alpha, default_pde_radii());
    worst = std::max(worst, r);
    detail("alpha=%4.1f  max relative residual %.3e", alpha, r);
  }
  const double elapsed = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "extremal PDE residual %.2e (tol %.0e), %.3f s", worst, kC2ResidualTol, elapsed);
  return verdict(2, worst < kC2ResidualTol && elapsed < kC2Seconds, buf);
}

bool criterion3() {
  const auto t0 = Clock::now();
  const std::vector<double> eps = {0.2, 0.1, 0.05, 0.02, 0.01};
  const auto grid = make_grid();
  bool ok = true;
  const auto check = [&](const char* what, double slope, double target) {
    const bool good = std::fabs(slope - target) <= kC3SlopeTol;
    ok = ok && good;
    detail("%-28s slope %.4f  target %.1f  %s", what, slope, target, good ? "ok" : "out of range");
  };
  const AsymptoticsReport r0 = cutoff_asymptotics(0.0, std::nullopt, eps, grid);
  check("alpha1=0 gradient", r0.slope_grad, 1.0);
  check("alpha1=0 first critical", r0.slope_crit1, 3.0);
  const AsymptoticsReport r1 = cutoff_asymptotics(1.0, 0.0, eps, grid);
  check("alpha1=1 gradient", r1.slope_grad, 1.0);
  check("alpha1=1 first critical", r1.slope_crit1, 4.0);
  check("alpha1=1 alpha2=0 second", *r1.slope_crit2, 3.0);
  const double elapsed = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "cutoff asymptotic slopes within +-%.1f, %.2f s", kC3SlopeTol, elapsed);
  return verdict(3, ok && elapsed < kC3Seconds, buf);
}

bool criterion4() {
  const auto grid = make_grid();
  oracle::ProfileGenerator gen(20240601);
  double worst_member = 0.0;
  double worst_scaling = 0.0;
  double worst_excess = 0.0;
  bool unique_ok = true;
  int failures = 0;
  const auto inst = regimes();
  for (int i = 0; i < kC4Directions; ++i) {
    const Instance& in = inst[i % inst.size()];
    const KirchhoffFunctional phi(grid, in.p, in.nl);
    const RadialFunction u = gen(grid);
    const NehariResult r = project_nehari(phi, u);
    const double member = std::fabs(phi.pairing(r.projected, r.projected)) / h1_norm_sq(r.projected);
    double excess = 0.0;
    for (int k = 0; k < kC4Samples; ++k) {
      const double t = r.t_u * std::pow(10.0, -1.0 + 2.0 * k / (kC4Samples - 1));
      excess = std::max(excess, (phi.energy(t * u).total - r.fiber_energy) / std::fabs(r.fiber_energy));
    }
    const NehariResult rs = project_nehari(phi, gen.uniform(0.05, 20.0) * u);
    double diff = 0.0;
    double top = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      diff = std::max(diff, std::fabs(rs.projected[j] - r.projected[j]));
      top = std::max(top, std::fabs(r.projected[j]));
    }
    const double scaling = diff / top;
    const bool uniq = in.p.mu < 0.0 || r.unique;
    worst_member = std::max(worst_member, member);
    worst_scaling = std::max(worst_scaling, scaling);
    worst_excess = std::max(worst_excess, excess);
    unique_ok = unique_ok && uniq;
    if (!(member < kC4Membership && scaling < kC4Scaling && excess <= kC4MaxSlack && uniq)) ++failures;
  }
  detail("directions %d, membership max %.2e, scaling max %.2e, fiber excess max %.2e, unique(mu>=0) %s",
         kC4Directions, worst_member, worst_scaling, worst_excess, unique_ok ? "yes" : "no");
  char buf[200];
  std::snprintf(buf, sizeof buf, "Nehari projection on %d random directions, %d failing", kC4Directions, failures);
  return verdict(4, failures == 0, buf);
}

struct Solved {
  GroundStateResult gs;
  double seconds;
};

Solved solve_ground_state(const Instance& in, const GridPtr& grid) {
  DescentOptions o;
  o.max_iters = kSolverMaxIters;
  o.abs_tol = kSolverAbsTol;
  const auto t0 = Clock::now();
  GroundStateResult gs = ground_state_search(in.p, in.nl, initial_profile("one_minus_r", grid, in.p.alpha1), o);
  return {std::move(gs), seconds_since(t0)};
}

bool criterion5() {
  const auto grid = make_grid();
  bool ok = true;
  std::string failed;
  for (const Instance& in : regimes()) {
    const Solved s = solve_ground_state(in, grid);
    const ThresholdReport tr = threshold_for(in.p);
    const CompareReport cr = compare_report(s.gs, tr);
    const bool conv = s.gs.converged && s.gs.dual_residual < kC5DualResidual;
    const bool fast = s.seconds < kC5Seconds;
    detail("%-38s m=%.10g threshold=%.10g below=%s residual=%.2e iters=%d %.1f s", in.name, s.gs.level_m, tr.level,
           cr.below ? "yes" : "no", s.gs.dual_residual, s.gs.iterations, s.seconds);
    if (!(conv && cr.below && fast)) {
      ok = false;
      failed += failed.empty() ? "" : "; ";
      failed += in.name;
      if (!conv) failed += " (not converged)";
      if (!cr.below) failed += " (not below threshold)";
      if (!fast) failed += " (too slow)";
    }
  }
  return verdict(5, ok, ok ? "ground states converge below the regime thresholds" : "failing: " + failed);
}

bool criterion6() {
  const auto grid = make_grid();
  bool ok = true;
  double worst = 0.0;
  for (const Instance& in : regimes()) {
    const Solved s = solve_ground_state(in, grid);
    MountainPassOptions o;
    o.max_iters = kSolverMaxIters;
    o.abs_tol = kSolverAbsTol;
    const auto t0 = Clock::now();
    const MountainPassResult mp =
        mountain_pass_search(in.p, in.nl, initial_profile("one_minus_r", grid, in.p.alpha1), o);
    const double gap = std::fabs(mp.level_cstar - s.gs.level_m) / s.gs.level_m;
    worst = std::max(worst, gap);
    ok = ok && gap < kC6RelGap && mp.endpoint_energy < 0.0;
    detail("%-38s m=%.10g c*=%.10g rel gap %.2e endpoint energy %.3g (%d its, %.1f s)", in.name, s.gs.level_m,
           mp.level_cstar, gap, mp.endpoint_energy, mp.iterations, seconds_since(t0));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "mountain-pass and ground-state levels agree, max rel gap %.2e (tol %.0e)", worst,
                kC6RelGap);
  return verdict(6, ok, buf);
}

bool criterion7() {
  const auto grid = make_grid(2048);
  const ProblemParams p = make(0, 0, 0, 0, -0.5);
  const KirchhoffFunctional phi(grid, p, {});
  const double level = threshold_single(0.0, 0.0, 1.0).level;
  bool decreasing = true;
  bool above = true;
  double prev = std::numeric_limits<double>::infinity();
  double gap = 0.0;
  for (double eps : {0.2, 0.1, 0.05, 0.02}) {
    const NehariResult r = project_nehari(phi, CutoffBubble(eps, 0.0).sample(grid));
    gap = (r.fiber_energy - level) / level;
    decreasing = decreasing && r.fiber_energy < prev;
    above = above && r.fiber_energy > level;
    prev = r.fiber_energy;
    detail("eps=%.2f  fiber level %.8g  gap %.2f%%", eps, r.fiber_energy, 100 * gap);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "reference limit: decreasing %s, above %s, gap at eps=0.02 %.1f%% (needs < %.0f%%)",
                decreasing ? "yes" : "no", above ? "yes" : "no", 100 * gap, 100 * kC7Gap);
  return verdict(7, decreasing && above && gap < kC7Gap, buf);
}

bool criterion8() {
  const auto grid = make_grid();
  const RadialFunction v0 = SingularProbe(0.25).sample(grid);
  const ProblemParams base = make(0, 0, 1, 0, -0.5);
  const LambdaSweep s = lambda_sweep(base, {5}, v0, {1, 10, 100, 1000, 10000});
  // Bound from its closed form with independently evaluated integrals.
  const double K1 = std::pow(lp_weighted_norm(v0, 6, 0), 6);
  const double bound = std::pow(base.b * std::pow(h1_norm_sq(v0), 2) / K1, 1.0 / (2 + 2 * base.alpha1));
  bool decreasing = true;
  bool below = true;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    detail("lambda=%-7g t=%.8g  fiber energy %.6g", s.rows[i].lambda, s.rows[i].t, s.rows[i].fiber_energy);
    if (i > 0 && !(s.rows[i].t < s.rows[i - 1].t)) decreasing = false;
    if (!(s.rows[i].t <= bound)) below = false;
  }
  const double ratio = s.rows.back().t / s.rows.front().t;
  detail("bound %.8g, last/first %.3e", bound, ratio);
  char buf[200];
  std::snprintf(buf, sizeof buf, "t_lambda strictly decreasing %s, below bound %s, last/first %.2e (needs < %.1f)",
                decreasing ? "yes" : "no", below ? "yes" : "no", ratio, kC8Ratio);
  return verdict(8, decreasing && below && ratio < kC8Ratio, buf);
}

bool criterion9() {
  const InterpolationParams ip = interpolation_params(1.0, 0.0, 2.0);
  const double S_delta = best_constant(ip.delta);
  const auto grid = make_grid();
  oracle::ProfileGenerator gen(9090);
  int violations = 0;
  double worst1 = -1.0;
  double worst2 = -1.0;
  for (int i = 0; i < kC9Functions; ++i) {
    const RadialFunction u = gen(grid);
    const double h1 = h1_norm(u);
    const double lg = lp_weighted_norm(u, critical_exponent(1.0), 1.0);
    const double lx = lp_weighted_norm(u, critical_exponent(0.0), 0.0);
    const double rhs1 = ip.C_tilde * std::pow(h1, 1 - ip.theta) * std::pow(lx, ip.theta);
    const double rhs2 = std::pow(S_delta, (ip.varsigma - 1) / 2) * std::pow(h1, 1 - ip.varsigma) * std::pow(lg, ip.varsigma);
    const double r1 = lg / rhs1 - 1;
    const double r2 = lx / rhs2 - 1;
    worst1 = std::max(worst1, r1);
    worst2 = std::max(worst2, r2);
    if (r1 > kC9Slack) ++violations;
    if (r2 > kC9Slack) ++violations;
  }
  detail("theta=%.4f C=%.6f delta=%.6f varsigma=%.6f S_delta=%.8f", ip.theta, ip.C_tilde, ip.delta, ip.varsigma,
         S_delta);
  detail("max lhs/rhs - 1: first %.3e, second %.3e", worst1, worst2);
  char buf[160];
  std::snprintf(buf, sizeof buf, "interpolation inequalities on %d functions, %d violations", kC9Functions, violations);
  return verdict(9, violations == 0, buf);
}

bool criterion10() {
  const EmbeddingEstimate e = estimate_embedding_constant(2.0, 0.0, make_grid());
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double rel = std::fabs(e.value - pi2) / pi2;
  detail("estimate %.10f after %d iterations, pi^2 = %.10f", e.value, e.iterations, pi2);
  char buf[160];
  std::snprintf(buf, sizeof buf, "embedding constant for p=2 rel error %.2e (tol %.0e)", rel, kC10RelTol);
  return verdict(10, rel < kC10RelTol, buf);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<bool()>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                  criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(all.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (int n = 1; n <= static_cast<int>(all.size()); ++n) selected.push_back(n);
  }
  bool ok = true;
  for (int n : selected) {
    try {
      ok = all[n - 1]() && ok;
    } catch (const std::exception& e) {
      ok = verdict(n, false, std::string("exception: ") + e.what()) && ok;
    }
  }
  return ok ? 0 : 1;
}
