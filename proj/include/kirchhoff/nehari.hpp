#pragma once

// Nehari scaling projection, ground states by projected descent on the Nehari
// manifold, an independent mountain-pass path solver, and the t_lambda sweep.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/functional.hpp"
#include "kirchhoff/profiles.hpp"
#include "kirchhoff/radial.hpp"

namespace kirchhoff {

/// Fiber of Phi along a unit direction: with s = t ||u||,
///   E(s) = a s^2/2 + b s^4/4 - sum_i c_i s^{e_i + 2}/(e_i + 2)
/// and E'(s) = s g(s), g(s) = a + b s^2 - sum_i c_i s^{e_i}.
class Fiber {
 public:
  Fiber(const ProblemParams& p, const NonlinearityModel& nl, const FiberIntegrals& f) : a_(p.a), b_(p.b) {
    if (!(f.norm_sq > 0.0)) throw InvalidArgument("cannot project the zero function");
    const double e1 = critical_exponent(p.alpha1);
    const double e2 = critical_exponent(p.alpha2);
    add(e1 - 2.0, f.crit1 / std::pow(f.norm_sq, 0.5 * e1));
    if (p.mu != 0.0) add(e2 - 2.0, p.mu * f.crit2 / std::pow(f.norm_sq, 0.5 * e2));
    if (p.lambda != 0.0) add(nl.q - 2.0, p.lambda * f.pert / std::pow(f.norm_sq, 0.5 * nl.q));
  }

  double g(double s) const {
    double v = a_ + b_ * s * s;
    for (const auto& t : terms_) v -= t.c * std::pow(s, t.e);
    return v;
  }

  double dg(double s) const {
    double v = 2.0 * b_ * s;
    for (const auto& t : terms_) v -= t.c * t.e * std::pow(s, t.e - 1.0);
    return v;
  }

  double energy(double s) const {
    const double s2 = s * s;
    double v = 0.5 * a_ * s2 + 0.25 * b_ * s2 * s2;
    for (const auto& t : terms_) v -= t.c * std::pow(s, t.e + 2.0) / (t.e + 2.0);
    return v;
  }

  /// Scale beyond which the dominant negative term outweighs all positive
  /// ones; zero if g never turns negative for large s.
  double upper_scale() const {
    std::vector<std::pair<double, double>> pos;  // (exponent, coefficient)
    if (a_ > 0.0) pos.emplace_back(0.0, a_);
    pos.emplace_back(2.0, b_);
    const Term* lead = nullptr;
    for (const auto& t : terms_) {
      if (t.c < 0.0) pos.emplace_back(t.e, -t.c);
    }
    for (const auto& t : terms_) {
      if (t.c > 0.0 && (!lead || t.e > lead->e)) lead = &t;
    }
    if (!lead) return 0.0;
    double scale = 0.0;
    const double npos = static_cast<double>(pos.size());
    for (const auto& [e, c] : pos) {
      if (e >= lead->e) return 0.0;
      scale = std::max(scale, std::pow((npos + 1.0) * c / lead->c, 1.0 / (lead->e - e)));
    }
    return 2.0 * scale;
  }

 private:
  struct Term {
    double e;
    double c;
  };
  void add(double e, double c) {
    if (c != 0.0) terms_.push_back({e, c});
  }

  double a_;
  double b_;
  std::vector<Term> terms_;
};

struct NehariResult {
  double t_u = 0.0;
  RadialFunction projected;
  double fiber_energy = 0.0;
  std::pair<double, double> root_bracket{0.0, 0.0};
  bool unique = false;
  int sign_changes = 0;
  /// |<Phi'(t u), t u>| / ||t u||^2 at the returned root.
  double membership_residual = 0.0;
};

namespace detail {

inline constexpr std::size_t kScanPoints = 512;
inline constexpr double kScanLowerRatio = 1e-8;

/// Picks the double within a few ulps of s with the smallest |g|.
inline double polish_root(const Fiber& fib, double s) {
  constexpr int kUlps = 8;
  double best = s;
  double best_g = std::fabs(fib.g(s));
  for (double dir : {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()}) {
    double x = s;
    for (int k = 0; k < kUlps && best_g > 0.0; ++k) {
      x = std::nextafter(x, dir);
      const double gx = std::fabs(fib.g(x));
      if (gx < best_g) {
        best_g = gx;
        best = x;
      }
    }
  }
  return best;
}

/// Safeguarded Newton on g with g(lo) > 0 > g(hi).
inline double refine_root(const Fiber& fib, double lo, double hi) {
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gs = fib.g(s);
    if (gs == 0.0) return s;
    if (gs > 0.0) lo = s; else hi = s;
    const double d = fib.dg(s);
    double next = d != 0.0 ? s - gs / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - s) <= 4.0 * std::numeric_limits<double>::epsilon() * s) return polish_root(fib, next);
    s = next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return polish_root(fib, s);
}

struct FiberRoot {
  double s = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int sign_changes = 0;
};

inline FiberRoot find_fiber_root(const Fiber& fib) {
  const double top = fib.upper_scale();
  if (!(top > 0.0) || !std::isfinite(top)) {
    throw NoRootError("fiber derivative stays positive: Phi(t u) has no maximum on this ray");
  }
  const double bottom = top * kScanLowerRatio;
  const double ratio = std::log(top / bottom) / static_cast<double>(kScanPoints - 1);
  FiberRoot best;
  double best_energy = -std::numeric_limits<double>::infinity();
  double prev_s = bottom;
  double prev_g = fib.g(bottom);
  for (std::size_t i = 1; i < kScanPoints; ++i) {
    const double s = i + 1 == kScanPoints ? top : bottom * std::exp(ratio * static_cast<double>(i));
    const double gs = fib.g(s);
    if ((prev_g > 0.0) != (gs > 0.0)) {
      ++best.sign_changes;
      if (prev_g > 0.0) {
        const double root = refine_root(fib, prev_s, s);
        const double e = fib.energy(root);
        if (e > best_energy) {
          best_energy = e;
          best.s = root;
          best.lo = prev_s;
          best.hi = s;
        }
      }
    }
    prev_s = s;
    prev_g = gs;
  }
  if (!(best.s > 0.0)) throw NoRootError("no sign change of the fiber derivative from + to - in the scan bracket");
  return best;
}

}  // namespace detail

inline NehariResult project_nehari(const KirchhoffFunctional& phi, const RadialFunction& u) {
  if (u.is_zero()) throw InvalidArgument("cannot project the zero function");
  const FiberIntegrals f = phi.integrals(u);
  const Fiber fib(phi.params(), phi.nonlinearity(), f);
  const auto root = detail::find_fiber_root(fib);
  const double norm = std::sqrt(f.norm_sq);
  NehariResult res{.t_u = root.s / norm, .projected = (root.s / norm) * u, .membership_residual = 0.0};
  res.fiber_energy = fib.energy(root.s);
  res.root_bracket = {root.lo / norm, root.hi / norm};
  res.sign_changes = root.sign_changes;
  res.unique = root.sign_changes == 1;
  res.membership_residual = std::fabs(fib.g(root.s));
  return res;
}

inline NehariResult project_nehari(const RadialFunction& u, const ProblemParams& p, const NonlinearityModel& nl) {
  return project_nehari(KirchhoffFunctional(u.grid_ptr(), p, nl), u);
}

// ---------------------------------------------------------------------------
// Initial profiles.

/// Named starting profiles: "one_minus_r" (normalized 1 - r) and "bubble"
/// (cutoff bubble with eps = 0.2 and the given alpha).
inline RadialFunction initial_profile(const std::string& name, const GridPtr& grid, double alpha1) {
  RadialFunction u = RadialFunction::zero(grid);
  if (name == "one_minus_r") {
    u = RadialFunction::sample(grid, [](double r) { return 1.0 - r; });
  } else if (name == "bubble") {
    u = CutoffBubble(0.2, alpha1).sample(grid);
  } else {
    throw InvalidArgument("unknown initial profile '" + name + "' (expected one_minus_r or bubble)");
  }
  u *= 1.0 / h1_norm(u);
  return u;
}

// ---------------------------------------------------------------------------
// Ground state.

struct DescentOptions {
  int max_iters = 5000;
  double step = 1.0;
  double tol = 1e-6;  // relative: residual < tol * max(1, level)
  double abs_tol = std::numeric_limits<double>::infinity();
};

struct GroundStateResult {
  RadialFunction minimizer;
  ProblemParams params;
  double level_m = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy_trace;
};

namespace detail {

inline bool residual_ok(double res, double level, const DescentOptions& o) {
  return res < o.tol * std::max(1.0, std::fabs(level)) && res < o.abs_tol;
}

inline std::string format_trace(const std::vector<double>& trace) {
  std::ostringstream os;
  os.precision(10);
  const std::size_t from = trace.size() > 40 ? trace.size() - 40 : 0;
  for (std::size_t i = from; i < trace.size(); ++i) os << (i == from ? "" : " ") << trace[i];
  return os.str();
}

}  // namespace detail

/// Descent on the Nehari manifold: u <- P(u - s g / (a + b||u||^2)), with P
/// the Nehari projection and g the Riesz gradient.  Scaling by the Kirchhoff
/// coefficient makes s = 1 the natural step; s is chosen by Armijo
/// backtracking on the fiber energy.
inline GroundStateResult ground_state_search(const KirchhoffFunctional& phi, const RadialFunction& init,
                                             const DescentOptions& opts = {}) {
  if (init.is_zero()) throw InvalidArgument("initial profile must be nonzero");
  if (!(opts.step > 0.0) || opts.max_iters < 0 || !(opts.tol > 0.0)) {
    throw InvalidArgument("descent options need step > 0, tol > 0, max_iters >= 0");
  }
  const ProblemParams& p = phi.params();
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 50;
  constexpr int kDivergenceWindow = 20;
  constexpr double kEnergyNoise = 1e-13;

  NehariResult cur = project_nehari(phi, init);
  GroundStateResult out{.minimizer = cur.projected, .params = p, .energy_trace = {}};
  out.level_m = cur.fiber_energy;
  out.energy_trace.push_back(cur.fiber_energy);

  double step = opts.step;
  int increases = 0;
  for (int it = 0;; ++it) {
    const RadialFunction g = phi.riesz_gradient(cur.projected);
    const double res = h1_norm(g);
    out.iterations = it;
    out.minimizer = cur.projected;
    out.level_m = cur.fiber_energy;
    out.dual_residual = res;
    if (detail::residual_ok(res, cur.fiber_energy, opts)) {
      out.converged = true;
      break;
    }
    if (it >= opts.max_iters) break;

    const double coef = p.a + p.b * h1_norm_sq(cur.projected);
    const double slope = res * res / coef;
    bool accepted = false;
    std::optional<NehariResult> trial;
    const double noise = kEnergyNoise * std::max(1.0, std::fabs(cur.fiber_energy));
    double s = step;
    for (int h = 0; h < kMaxHalvings; ++h, s *= 0.5) {
      RadialFunction w = cur.projected;
      w.axpy(-s / coef, g);
      if (w.is_zero()) continue;
      try {
        trial = project_nehari(phi, w);
      } catch (const NoRootError&) {
        continue;
      }
      // Below the rounding floor of the energy the sufficient-decrease test
      // cannot be resolved; accept anything that does not increase it.
      if (trial->fiber_energy <= cur.fiber_energy - kArmijo * s * slope + noise) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stagnation at rounding level; report best iterate
    step = std::min(opts.step, 2.0 * s);
    increases = trial->fiber_energy > cur.fiber_energy + noise ? increases + 1 : 0;
    cur = std::move(*trial);
    out.energy_trace.push_back(cur.fiber_energy);
    if (increases >= kDivergenceWindow) {
      throw NonconvergenceError("fiber energy increased over 20 consecutive accepted steps",
                                detail::format_trace(out.energy_trace));
    }
  }
  // Without the perturbation the infimum over the Nehari manifold is not
  // attained; any discrete minimizer is a grid artifact.
  if (p.lambda == 0.0) out.converged = false;
  return out;
}

inline GroundStateResult ground_state_search(const ProblemParams& p, const NonlinearityModel& nl,
                                             const RadialFunction& init, const DescentOptions& opts = {}) {
  return ground_state_search(KirchhoffFunctional(init.grid_ptr(), p, nl), init, opts);
}

// ---------------------------------------------------------------------------
// Mountain pass.

struct MountainPassOptions {
  int path_points = 32;
  int max_iters = 5000;
  double tol = 1e-6;
  double abs_tol = std::numeric_limits<double>::infinity();
  double step = 1.0;        // transversal descent, in units of 1/(a + b||u||^2)
  double climb_step = 0.5;  // ascent along the path tangent at the peak
  int window = 3;           // nodes on each side of the peak that move
  int reparam_every = 10;
  double max_endpoint_scale = 1e12;
};

struct MountainPassResult {
  std::vector<RadialFunction> path;
  double level_cstar = 0.0;
  double endpoint_energy = 0.0;
  int iterations = 0;
  bool converged = false;
  std::size_t peak_index = 0;
  double peak_residual = 0.0;
};

namespace detail {

/// Redistributes the path by H^1 arc length on each side of the pinned node.
inline void reparametrize(std::vector<RadialFunction>& path, std::size_t pinned) {
  const auto respace = [&path](std::size_t first, std::size_t last) {
    if (last <= first + 1) return;
    std::vector<double> arc(last - first + 1, 0.0);
    for (std::size_t i = first + 1; i <= last; ++i) {
      arc[i - first] = arc[i - first - 1] + h1_norm(path[i] - path[i - 1]);
    }
    const double total = arc.back();
    if (!(total > 0.0)) return;
    std::vector<RadialFunction> fresh;
    fresh.reserve(last - first - 1);
    std::size_t seg = 0;
    for (std::size_t k = first + 1; k < last; ++k) {
      const double target = total * static_cast<double>(k - first) / static_cast<double>(last - first);
      while (seg + 1 < arc.size() - 1 && arc[seg + 1] < target) ++seg;
      const double len = arc[seg + 1] - arc[seg];
      const double w = len > 0.0 ? (target - arc[seg]) / len : 0.0;
      RadialFunction v = (1.0 - w) * path[first + seg];
      v.axpy(w, path[first + seg + 1]);
      fresh.push_back(std::move(v));
    }
    for (std::size_t k = first + 1; k < last; ++k) path[k] = std::move(fresh[k - first - 1]);
  };
  respace(0, pinned);
  respace(pinned, path.size() - 1);
}

/// Largest energy on the two segments adjacent to node i (16 samples each).
inline double refined_peak(const KirchhoffFunctional& phi, const std::vector<RadialFunction>& path, std::size_t i) {
  double best = phi.energy(path[i]).total;
  for (std::size_t j : {i - 1, i}) {
    if (j + 1 >= path.size()) continue;
    for (int k = 1; k < 16; ++k) {
      const double w = k / 16.0;
      RadialFunction v = (1.0 - w) * path[j];
      v.axpy(w, path[j + 1]);
      best = std::max(best, phi.energy(v).total);
    }
  }
  return best;
}

}  // namespace detail

/// Mountain-pass search from 0 to a negative-energy endpoint.  The peak node
/// follows a climbing-image update (descend transversally, ascend along the
/// path tangent); its neighbours with positive energy descend transversally.
inline MountainPassResult mountain_pass_search(const KirchhoffFunctional& phi, const RadialFunction& profile,
                                               const MountainPassOptions& opts = {}) {
  const ProblemParams& p = phi.params();
  if (!(p.lambda > 0.0)) throw InvalidArgument("mountain-pass search needs lambda > 0");
  if (opts.path_points < 3) throw InvalidArgument("path needs at least 3 points");
  if (!(opts.step > 0.0 && opts.step <= 1.0) || !(opts.climb_step > 0.0 && opts.climb_step <= 1.0)) {
    throw InvalidArgument("mountain-pass steps must lie in (0, 1]");
  }
  if (profile.is_zero()) throw InvalidArgument("profile must be nonzero");

  const NehariResult start = project_nehari(phi, profile);
  RadialFunction endpoint = start.projected;
  double scale = 1.0;
  double end_energy = phi.energy(endpoint).total;
  while (!(end_energy < 0.0)) {
    scale *= 2.0;
    if (scale > opts.max_endpoint_scale) throw GeometryError("no negative-energy endpoint within the scale cap");
    endpoint = (scale * start.t_u) * profile;
    end_energy = phi.energy(endpoint).total;
  }

  const std::size_t m = static_cast<std::size_t>(opts.path_points);
  std::vector<RadialFunction> path;
  path.reserve(m);
  for (std::size_t i = 0; i < m; ++i) path.push_back((static_cast<double>(i) / static_cast<double>(m - 1)) * endpoint);

  MountainPassResult out;
  std::vector<double> energy(m, 0.0);
  energy.back() = end_energy;
  const auto evaluate = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i <= hi; ++i) energy[i] = phi.energy(path[i]).total;
  };
  const auto find_peak = [&] {
    return static_cast<std::size_t>(std::max_element(energy.begin() + 1, energy.end() - 1) - energy.begin());
  };
  evaluate(1, m - 2);
  const auto window = static_cast<std::size_t>(std::max(1, opts.window));
  for (int it = 0;; ++it) {
    const std::size_t peak = find_peak();
    const RadialFunction g_peak = phi.riesz_gradient(path[peak]);
    const double res = h1_norm(g_peak);
    out.iterations = it;
    out.peak_index = peak;
    out.peak_residual = res;
    if (res < opts.tol * std::max(1.0, std::fabs(energy[peak])) && res < opts.abs_tol) {
      out.converged = true;
      break;
    }
    if (it >= opts.max_iters) break;

    // Only nodes near the peak can carry the path maximum; the rest stay put.
    const std::size_t lo = peak > window ? peak - window : 1;
    const std::size_t hi = std::min(m - 2, peak + window);
    std::vector<RadialFunction> moved(path.begin() + static_cast<std::ptrdiff_t>(lo),
                                      path.begin() + static_cast<std::ptrdiff_t>(hi + 1));
    for (std::size_t i = lo; i <= hi; ++i) {
      if (i != peak && !(energy[i] > 0.0)) continue;
      const RadialFunction g = i == peak ? g_peak : phi.riesz_gradient(path[i]);
      RadialFunction tau = path[i + 1] - path[i - 1];
      const double tn = h1_norm(tau);
      if (tn > 0.0) tau *= 1.0 / tn;
      const double along = h1_inner(g, tau);
      RadialFunction d = g;
      d.axpy(i == peak ? -(1.0 + opts.climb_step / opts.step) * along : -along, tau);
      const double coef = p.a + p.b * h1_norm_sq(path[i]);
      moved[i - lo].axpy(-opts.step / coef, d);
    }
    std::move(moved.begin(), moved.end(), path.begin() + static_cast<std::ptrdiff_t>(lo));
    evaluate(lo, hi);
    if (opts.reparam_every > 0 && (it + 1) % opts.reparam_every == 0) {
      detail::reparametrize(path, find_peak());
      evaluate(1, m - 2);
    }
  }

  const std::size_t peak = find_peak();
  out.peak_index = peak;
  out.level_cstar = detail::refined_peak(phi, path, peak);
  out.endpoint_energy = end_energy;
  out.path = std::move(path);
  return out;
}

inline MountainPassResult mountain_pass_search(const ProblemParams& p, const NonlinearityModel& nl,
                                               const RadialFunction& profile, const MountainPassOptions& opts = {}) {
  return mountain_pass_search(KirchhoffFunctional(profile.grid_ptr(), p, nl), profile, opts);
}

// ---------------------------------------------------------------------------
// Mountain-pass geometry.

struct GeometryReport {
  double rho = 0.0;
  double kappa = 0.0;
  double omega_norm = 0.0;
  bool ring_found = false;
};

/// Probe directions used for the ring scan.
inline std::vector<RadialFunction> geometry_probes(const GridPtr& grid, double alpha1) {
  std::vector<RadialFunction> probes;
  probes.push_back(RadialFunction::sample(grid, [](double r) { return 1.0 - r; }));
  probes.push_back(RadialFunction::sample(grid, [](double r) { return 1.0 - r * r; }));
  probes.push_back(RadialFunction::sample(grid, [](double r) {
    return r == 0.0 ? std::numbers::pi : std::sin(std::numbers::pi * r) / r;
  }));
  probes.push_back(CutoffBubble(0.2, alpha1).sample(grid));
  probes.push_back(CutoffBubble(0.05, alpha1).sample(grid));
  probes.push_back(SingularProbe(0.25).sample(grid));
  return probes;
}

/// Scans spheres ||u|| = rho (log grid on [1e-6, 1e6]) and reports the rho with
/// the largest minimum of Phi over the probe set, and the norm of a point with
/// negative energy.  A missing ring is reported, not thrown.
inline GeometryReport verify_mp_geometry(const KirchhoffFunctional& phi) {
  const ProblemParams& p = phi.params();
  std::vector<Fiber> fibers;
  for (const auto& v : geometry_probes(phi.grid(), p.alpha1)) {
    fibers.emplace_back(p, phi.nonlinearity(), phi.integrals(v));
  }
  GeometryReport rep;
  rep.kappa = -std::numeric_limits<double>::infinity();
  constexpr int kSamples = 481;
  for (int i = 0; i < kSamples; ++i) {
    const double rho = std::pow(10.0, -6.0 + 12.0 * i / (kSamples - 1));
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& f : fibers) worst = std::min(worst, f.energy(rho));
    if (worst > rep.kappa) {
      rep.kappa = worst;
      rep.rho = rho;
    }
  }
  rep.ring_found = rep.kappa > 0.0;
  for (double rho = 1.0; rho < 1e12; rho *= 2.0) {
    if (fibers.front().energy(rho) < 0.0) {
      rep.omega_norm = rho;
      break;
    }
  }
  return rep;
}

inline GeometryReport verify_mp_geometry(const ProblemParams& p, const NonlinearityModel& nl, const GridPtr& grid) {
  return verify_mp_geometry(KirchhoffFunctional(grid, p, nl));
}

// ---------------------------------------------------------------------------
// t_lambda sweep.

struct SweepRow {
  double lambda = 0.0;
  double t = 0.0;
  double fiber_energy = 0.0;
};

struct LambdaSweep {
  std::vector<SweepRow> rows;
  double bound = 0.0;        // Nehari root of v0 at lambda = 0
  bool monotone = false;     // t strictly decreasing in lambda
  bool below_bound = false;  // every t <= bound
};

/// Nehari-projects v0 for each lambda.  The bound is the lambda = 0 root,
/// which for a = mu = 0 equals (b ||v0||^4 / K1)^{1/(2+2 alpha1)}.
inline LambdaSweep lambda_sweep(const ProblemParams& base, const NonlinearityModel& nl, const RadialFunction& v0,
                                const std::vector<double>& lambdas) {
  if (v0.is_zero()) throw InvalidArgument("sweep direction must be nonzero");
  if (lambdas.empty()) throw InvalidArgument("lambda list is empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw InvalidArgument("sweep values of lambda must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw InvalidArgument("sweep values of lambda must increase");
  }
  LambdaSweep out;
  ProblemParams ref = base;
  ref.lambda = 0.0;
  out.bound = project_nehari(v0, ref, nl).t_u;
  for (double lam : lambdas) {
    ProblemParams p = base;
    p.lambda = lam;
    const NehariResult r = project_nehari(v0, p, nl);
    out.rows.push_back({lam, r.t_u, r.fiber_energy});
  }
  out.monotone = true;
  out.below_bound = true;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    if (i > 0 && !(out.rows[i].t < out.rows[i - 1].t)) out.monotone = false;
    if (!(out.rows[i].t <= out.bound)) out.below_bound = false;
  }
  return out;
}

}  // namespace kirchhoff
