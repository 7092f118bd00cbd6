#pragma once

// Radial functions on the unit ball of R^3, discretized as piecewise-linear
// profiles u(r) on a graded grid 0 = r_0 < ... < r_n = 1, and quadrature
// against the singular weights r^sigma that appear in every weighted norm.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

/// Surface area of the unit sphere in R^3.
inline constexpr double kSphereArea = 4.0 * std::numbers::pi;

namespace detail {

// 8-point Gauss-Legendre rule mapped to [0, 1].
inline constexpr std::array<double, 8> kGaussNodes = {
    0.019855071751231856, 0.10166676129318664, 0.23723379504183550,
    0.40828267875217510,  0.59171732124782490, 0.76276620495816450,
    0.89833323870681336,  0.98014492824876814};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.050614268145188130, 0.11119051722668724, 0.15685332293894364,
    0.18134189168918100,  0.18134189168918100, 0.15685332293894364,
    0.11119051722668724,  0.050614268145188130};

inline constexpr std::size_t kPointsPerCell = kGaussNodes.size();

/// Neumaier summation.  Used where large terms cancel (pairings on the
/// Nehari manifold), so the rounding error stays at a few ulps of the total.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Weights w_k at the Gauss nodes t_k with sum_k w_k t_k^i = int_0^1 t^{sigma+i} dt
/// for i = 0..7 (product integration against t^sigma).
inline std::array<double, 8> product_weights(double sigma) {
  constexpr std::size_t m = kPointsPerCell;
  std::array<std::array<long double, m + 1>, m> a{};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      a[i][k] = std::pow(static_cast<long double>(kGaussNodes[k]),
                         static_cast<long double>(i));
    }
    a[i][m] = 1.0L / (static_cast<long double>(sigma) + 1.0L + i);
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, m> w{};
  for (std::size_t i = m; i-- > 0;) {
    long double s = a[i][m];
    for (std::size_t c = i + 1; c < m; ++c) s -= a[i][c] * static_cast<long double>(w[c]);
    w[i] = static_cast<double>(s / a[i][i]);
  }
  return w;
}

}  // namespace detail

/// Nodes r_j = (j/n)^grading, j = 0..n.  Immutable after construction.
class RadialGrid {
 public:
  RadialGrid(std::size_t n, double grading) : n_(n), grading_(grading) {
    if (n < 4) throw InvalidArgument("grid needs at least 4 cells, got " + std::to_string(n));
    if (!(grading >= 1.0) || !std::isfinite(grading)) {
      throw InvalidArgument("grading exponent must be >= 1");
    }
    nodes_.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      nodes_[j] = std::pow(static_cast<double>(j) / static_cast<double>(n), grading);
    }
    nodes_[0] = 0.0;
    nodes_[n] = 1.0;
    stiffness_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double r0 = nodes_[j];
      const double r1 = nodes_[j + 1];
      const double h = r1 - r0;
      // omega_3 * int_{r0}^{r1} r^2 dr / h^2, factored to avoid cancellation.
      stiffness_[j] = kSphereArea * (r1 * r1 + r1 * r0 + r0 * r0) / (3.0 * h);
    }
  }

  std::size_t cells() const noexcept { return n_; }
  std::size_t node_count() const noexcept { return n_ + 1; }
  double grading() const noexcept { return grading_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t j) const { return nodes_[j]; }
  double width(std::size_t j) const { return nodes_[j + 1] - nodes_[j]; }

  /// c_j with ||u||^2 = sum_j c_j (u_{j+1} - u_j)^2 for piecewise-linear u.
  std::span<const double> stiffness() const noexcept { return stiffness_; }

 private:
  std::size_t n_;
  double grading_;
  std::vector<double> nodes_;
  std::vector<double> stiffness_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline GridPtr make_grid(std::size_t n = 1024, double grading = 2.0) {
  return std::make_shared<const RadialGrid>(n, grading);
}

inline bool same_grid(const RadialGrid& a, const RadialGrid& b) {
  return &a == &b || (a.cells() == b.cells() && a.grading() == b.grading());
}

/// Piecewise-linear radial profile with the Dirichlet condition u(1) = 0.
/// The origin node carries a free value.
class RadialFunction {
 public:
  RadialFunction(GridPtr grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw InvalidArgument("radial function needs a grid");
    if (values_.size() != grid_->node_count()) {
      throw InvalidInput("expected " + std::to_string(grid_->node_count()) + " nodal values, got " +
                         std::to_string(values_.size()));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw InvalidInput("radial function has a non-finite value");
    }
    if (values_.back() != 0.0) throw InvalidInput("radial function must vanish at r = 1");
  }

  static RadialFunction zero(GridPtr grid) {
    const std::size_t m = grid->node_count();
    return {std::move(grid), std::vector<double>(m, 0.0)};
  }

  /// Samples f at the nodes.  A boundary value below 1e-12 relative to the
  /// largest sample is snapped to zero.  With flat_origin the origin takes
  /// the value at r_1 (for profiles singular at 0).
  template <class F>
  static RadialFunction sample(GridPtr grid, F&& f, bool flat_origin = false) {
    const auto nodes = grid->nodes();
    std::vector<double> v(nodes.size());
    for (std::size_t j = flat_origin ? 1 : 0; j < nodes.size(); ++j) v[j] = f(nodes[j]);
    if (flat_origin) v[0] = v[1];
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::fabs(x));
    if (std::isfinite(v.back()) && std::fabs(v.back()) <= 1e-12 * std::max(vmax, 1.0)) v.back() = 0.0;
    return {std::move(grid), std::move(v)};
  }

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const RadialGrid& grid() const noexcept { return *grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
  }

  RadialFunction& operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
  }
  RadialFunction& operator+=(const RadialFunction& o) {
    check_same(o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
  }
  RadialFunction& operator-=(const RadialFunction& o) {
    check_same(o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
  }
  /// this += c * o
  RadialFunction& axpy(double c, const RadialFunction& o) {
    check_same(o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += c * o.values_[j];
    return *this;
  }

  friend RadialFunction operator*(double c, RadialFunction u) { return u *= c; }
  friend RadialFunction operator+(RadialFunction u, const RadialFunction& v) { return u += v; }
  friend RadialFunction operator-(RadialFunction u, const RadialFunction& v) { return u -= v; }

  void check_same(const RadialFunction& o) const {
    if (!same_grid(*grid_, *o.grid_)) throw InvalidArgument("radial functions live on different grids");
  }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Quadrature for omega_3 * int_0^1 r^sigma g(r) dr.  Eight Gauss points per
/// cell; on the first cell the weights integrate t^sigma * (degree-7
/// polynomial) exactly, so the singular weight is never sampled at r = 0.
class WeightedQuadrature {
 public:
  WeightedQuadrature(GridPtr grid, double sigma) : grid_(std::move(grid)), sigma_(sigma) {
    if (!(sigma > -1.0)) {
      throw InvalidArgument("weight exponent must exceed -1, got " + std::to_string(sigma));
    }
    const std::size_t n = grid_->cells();
    constexpr std::size_t m = detail::kPointsPerCell;
    points_.resize(n * m);
    weights_.resize(n * m);
    const auto first = detail::product_weights(sigma);
    const double r1 = grid_->node(1);
    const double scale0 = kSphereArea * std::pow(r1, sigma + 1.0);
    for (std::size_t k = 0; k < m; ++k) {
      points_[k] = r1 * detail::kGaussNodes[k];
      weights_[k] = scale0 * first[k];
    }
    for (std::size_t j = 1; j < n; ++j) {
      const double r0 = grid_->node(j);
      const double h = grid_->width(j);
      for (std::size_t k = 0; k < m; ++k) {
        const double x = r0 + h * detail::kGaussNodes[k];
        points_[j * m + k] = x;
        weights_[j * m + k] = kSphereArea * std::pow(x, sigma) * h * detail::kGaussWeights[k];
      }
    }
  }

  double sigma() const noexcept { return sigma_; }
  const RadialGrid& grid() const noexcept { return *grid_; }
  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Integral of a pointwise map g(r).
  template <class F>
  double integrate_map(F&& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) s += weights_[i] * g(points_[i]);
    if (!std::isfinite(s)) throw InvalidInput("integrand is not finite on the grid");
    return s;
  }

  /// Integral of phi(u(r)) for piecewise-linear u.
  template <class Phi>
  double integrate(const RadialFunction& u, Phi&& phi) const {
    check(u);
    constexpr std::size_t m = detail::kPointsPerCell;
    const auto v = u.values();
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
      const double a = v[j];
      const double b = v[j + 1];
      if (a == 0.0 && b == 0.0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        const double t = detail::kGaussNodes[k];
        s += weights_[j * m + k] * phi(a + t * (b - a));
      }
    }
    return s;
  }

  /// Integral of psi(u(r)) * v(r) for piecewise-linear u and v.
  template <class Psi>
  double integrate_against(const RadialFunction& u, const RadialFunction& v, Psi&& psi) const {
    check(u);
    check(v);
    constexpr std::size_t m = detail::kPointsPerCell;
    const auto uv = u.values();
    const auto vv = v.values();
    detail::CompensatedSum s;
    for (std::size_t j = 0; j + 1 < uv.size(); ++j) {
      double cell = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double t = detail::kGaussNodes[k];
        const double ut = uv[j] + t * (uv[j + 1] - uv[j]);
        const double vt = vv[j] + t * (vv[j + 1] - vv[j]);
        cell += weights_[j * m + k] * psi(ut) * vt;
      }
      s.add(cell);
    }
    return s.value();
  }

  /// Load vector L_i = integral of psi(u) * hat_i, accumulated into out (scaled by c).
  template <class Psi>
  void accumulate_load(const RadialFunction& u, double c, std::span<double> out, Psi&& psi) const {
    check(u);
    constexpr std::size_t m = detail::kPointsPerCell;
    const auto v = u.values();
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
      const double a = v[j];
      const double b = v[j + 1];
      if (a == 0.0 && b == 0.0) continue;
      double left = 0.0;
      double right = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double t = detail::kGaussNodes[k];
        const double f = weights_[j * m + k] * psi(a + t * (b - a));
        left += f * (1.0 - t);
        right += f * t;
      }
      out[j] += c * left;
      out[j + 1] += c * right;
    }
  }

 private:
  void check(const RadialFunction& u) const {
    if (!same_grid(*grid_, u.grid())) throw InvalidArgument("function and quadrature use different grids");
  }

  GridPtr grid_;
  double sigma_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// omega_3 * int_0^1 r^sigma g(r) dr for a pointwise map g.
template <class F>
double weighted_integral(const GridPtr& grid, F&& g, double sigma) {
  return WeightedQuadrature(grid, sigma).integrate_map(std::forward<F>(g));
}

/// omega_3 * int_0^1 r^sigma u(r) dr for the piecewise-linear u.
inline double weighted_integral(const RadialFunction& u, double sigma) {
  return WeightedQuadrature(u.grid_ptr(), sigma).integrate(u, [](double x) { return x; });
}

/// <grad u, grad v> in L^2(B), exact for piecewise-linear profiles.
inline double h1_inner(const RadialFunction& u, const RadialFunction& v) {
  u.check_same(v);
  const auto c = u.grid().stiffness();
  const auto a = u.values();
  const auto b = v.values();
  detail::CompensatedSum s;
  for (std::size_t j = 0; j < c.size(); ++j) s.add(c[j] * (a[j + 1] - a[j]) * (b[j + 1] - b[j]));
  return s.value();
}

inline double h1_norm_sq(const RadialFunction& u) { return h1_inner(u, u); }

inline double h1_norm(const RadialFunction& u) { return std::sqrt(h1_norm_sq(u)); }

/// (int_B |x|^alpha |u|^p dx)^{1/p}.
inline double lp_weighted_norm(const RadialFunction& u, double p, double alpha) {
  if (!(p >= 1.0)) throw InvalidArgument("Lebesgue exponent must be >= 1");
  if (!(alpha > -2.0)) throw InvalidArgument("weight exponent alpha must exceed -2");
  const WeightedQuadrature q(u.grid_ptr(), 2.0 + alpha);
  const double s = q.integrate(u, [p](double x) { return std::pow(std::fabs(x), p); });
  return std::pow(s, 1.0 / p);
}

/// Solves <grad g, grad phi_i> = load_i for all free nodes i = 0..n-1
/// (g_n = 0).  The radial stiffness matrix is a weighted path Laplacian with
/// a natural condition at the origin, so the solve reduces to two prefix sums.
inline RadialFunction solve_stiffness(const GridPtr& grid, std::span<const double> load) {
  const std::size_t n = grid->cells();
  if (load.size() < n) throw InvalidArgument("load vector too short");
  const auto c = grid->stiffness();
  std::vector<double> flux(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += load[j];
    if (!(c[j] > 0.0) || !std::isfinite(c[j])) throw InternalError("singular radial stiffness system");
    flux[j] = acc / c[j];
  }
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t j = n; j-- > 0;) g[j] = g[j + 1] + flux[j];
  return {grid, std::move(g)};
}

}  // namespace kirchhoff
