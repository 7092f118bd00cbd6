#include <gtest/gtest.h>

#include <cmath>

#include "kirchhoff/extremals.hpp"
#include "kirchhoff/profiles.hpp"
#include "oracles.hpp"

using namespace kirchhoff;
using oracle::kPi;

TEST(BestConstant, ClosedFormValues) {
  EXPECT_LT(oracle::rel(best_constant(0), 3 * std::pow(kPi / 2, 4.0 / 3)), 1e-13);
  EXPECT_NEAR(best_constant(0), 5.4779, 1e-4);
  EXPECT_LT(oracle::rel(best_constant(-1), 2 * std::sqrt(2 * kPi / 3)), 1e-13);
  EXPECT_NEAR(best_constant(-1), 2.89441, 1e-5);
  EXPECT_THROW(best_constant(-2), InvalidArgument);
}

TEST(BestConstant, AgreesWithTgammaFormula) {
  for (double alpha = -1.9; alpha <= 6.0; alpha += 0.1) {
    EXPECT_LT(oracle::rel(best_constant(alpha), oracle::best_constant(alpha)), 1e-12) << alpha;
  }
}

TEST(LanczosGamma, AgreesWithStdTgamma) {
  for (double z = 0.05; z < 12.0; z += 0.037) EXPECT_LT(oracle::rel(lanczos_gamma(z), std::tgamma(z)), 1e-13) << z;
}

TEST(Rayleigh, MatchesBestConstant) {
  for (double alpha : {-1.5, -1.0, -0.5, 0.0, 1.0, 2.0}) {
    EXPECT_LT(oracle::rel(rayleigh_quotient(alpha, 1.0).value, best_constant(alpha)), 1e-3) << alpha;
  }
}

TEST(Rayleigh, DilationInvariant) {
  EXPECT_LT(oracle::rel(rayleigh_quotient(0.0, 0.5).value, rayleigh_quotient(0.0, 1.0).value), 1e-3);
  EXPECT_LT(oracle::rel(rayleigh_quotient(0.0, 0.5).value, best_constant(0.0)), 1e-3);
}

TEST(Rayleigh, TruncatedQuotientIsWithinTheTailBound) {
  const RayleighEstimate e = rayleigh_quotient(0.0, 1.0, 50.0);
  EXPECT_GT(e.tail_bound, 0.0);
  EXPECT_LT(std::fabs(e.truncated - e.value), 2 * e.tail_bound);
  EXPECT_THROW(rayleigh_quotient(0.0, 1.0, 5.0), InvalidArgument);
}

TEST(ExtremalPde, ResidualIsSmall) {
  EXPECT_LT(verify_extremal_pde(0.0), 1e-6);
  EXPECT_LT(verify_extremal_pde(2.0), 1e-6);
  EXPECT_LT(verify_extremal_pde(-1.5), 1e-6);
  EXPECT_LT(verify_extremal_pde(-1.0), 1e-6);
  EXPECT_THROW(verify_extremal_pde(0.0, {1e-3}), InvalidArgument);
}

TEST(ExtremalPde, ClosedFormDerivativesMatchFiniteDifferences) {
  for (double alpha : {-1.5, 0.0, 2.0}) {
    const ExtremalProfile U(1.0, alpha);
    const auto f = [&](double r) { return U(r); };
    for (double r : {0.05, 0.3, 1.0, 4.0, 30.0}) {
      const double h = 1e-3 * r;
      EXPECT_LT(oracle::rel(U.derivative(r), oracle::diff4(f, r, h)), 1e-8) << alpha << " " << r;
      EXPECT_LT(oracle::rel(U.second_derivative(r), oracle::diff4_second(f, r, h)), 1e-5) << alpha << " " << r;
      // Far out the two sides of the equation are a tiny remainder of U'' and
      // the difference quotients cannot resolve it.
      if (r > 5.0) continue;
      // -U'' - 2U'/r = r^alpha U^{5+2alpha}, evaluated with the difference quotients only.
      const double lap = oracle::diff4_second(f, r, h) + 2 * oracle::diff4(f, r, h) / r;
      const double rhs = std::pow(r, alpha) * std::pow(U(r), 5 + 2 * alpha);
      EXPECT_LT(std::fabs(-lap - rhs) / rhs, 1e-5) << alpha << " " << r;
    }
  }
}

TEST(ExtremalProfileTest, PointwiseFormula) {
  const double eps = 0.3;
  const double alpha = 0.7;
  const ExtremalProfile U(eps, alpha);
  for (double r : {0.0, 0.01, 0.5, 2.0}) {
    const double k = 2 + alpha;
    const double want = std::pow(3 + alpha, 1 / (4 + 2 * alpha)) * std::sqrt(eps) / std::pow(std::pow(eps, k) + std::pow(r, k), 1 / k);
    EXPECT_LT(oracle::rel(U(r), want), 1e-14);
  }
}

TEST(ExtremalProfileTest, PositiveDecreasingAndDilationCovariant) {
  for (double alpha : {-1.5, 0.0, 1.0, 3.0}) {
    const ExtremalProfile U1(1.0, alpha);
    for (double eps : {0.01, 0.2, 3.0}) {
      const ExtremalProfile U(eps, alpha);
      double prev = U(0.0);
      EXPECT_GT(prev, 0.0);
      for (double r = 1e-3; r < 100; r *= 1.3) {
        EXPECT_GT(U(r), 0.0);
        // Near the origin U is flat to double precision when r << eps.
        if (r > 1e-2 * eps) {
          EXPECT_LT(U(r), prev);
        } else {
          EXPECT_LE(U(r), prev);
        }
        prev = U(r);
        EXPECT_LT(oracle::rel(U(r), U1(r / eps) / std::sqrt(eps)), 1e-14);
      }
    }
  }
}

TEST(Cutoff, PlateausAtNodes) {
  const auto g = make_grid();
  for (double alpha : {-1.0, 0.0, 1.0}) {
    const CutoffBubble c(0.05, alpha);
    const RadialFunction u = c.sample(g);
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double r = g->node(j);
      if (r <= 1.0 / 3) {
        EXPECT_EQ(u[j], c.bubble()(r));
      } else if (r >= 2.0 / 3) {
        EXPECT_EQ(u[j], 0.0);
      }
    }
  }
}

TEST(Asymptotics, SlopesForTheSobolevCase) {
  const AsymptoticsReport rep = cutoff_asymptotics(0.0, std::nullopt, {0.2, 0.1, 0.05, 0.02, 0.01}, make_grid());
  EXPECT_GE(rep.slope_grad, 0.8);
  EXPECT_NEAR(rep.slope_grad, 1.0, 0.2);
  EXPECT_NEAR(rep.slope_crit1, 3.0, 0.3);
  EXPECT_FALSE(rep.slope_crit2.has_value());
  EXPECT_LT(oracle::rel(rep.limit_grad, std::pow(best_constant(0), 1.5)), 1e-14);
}

TEST(Asymptotics, SecondCriticalLimitAgainstSimpson) {
  const ExtremalProfile U(1.0, 1.0);
  // Substitute r = x / (1 - x) to map [0, inf) onto [0, 1).
  const double want = oracle::kOmega3 * oracle::simpson(
                                            [&](double x) {
                                              if (x >= 1.0) return 0.0;
                                              const double r = x / (1 - x);
                                              return r * r * std::pow(U(r), 6) / ((1 - x) * (1 - x));
                                            },
                                            0.0, 1.0, 1e-13);
  EXPECT_LT(oracle::rel(second_critical_limit(1.0, 0.0), want), 1e-7);
}

TEST(Asymptotics, Errors) {
  const auto g = make_grid(64);
  EXPECT_THROW(cutoff_asymptotics(0.0, std::nullopt, {0.2, 0.1, 0.05}, g), InvalidArgument);
  EXPECT_THROW(cutoff_asymptotics(0.0, std::nullopt, {0.2, 0.1, 0.1, 0.05}, g), InvalidArgument);
  EXPECT_THROW(cutoff_asymptotics(0.0, std::nullopt, {0.5, 0.1, 0.05, 0.02}, g), InvalidArgument);
}

TEST(TEpsilon, BracketForSmallEps) {
  ProblemParams p;
  p.lambda = 1;
  const KirchhoffFunctional phi(make_grid(), p, {});
  const TEpsilonReport rep = t_epsilon_bounds(phi, {0.2, 0.1, 0.05, 0.02});
  EXPECT_TRUE(rep.bracket_claimed);
  EXPECT_GT(rep.t_min, 0.0);
  for (const auto& row : rep.rows) {
    EXPECT_GE(row.t, rep.t_min);
    EXPECT_LE(row.t, rep.t_max);
  }
  const TEpsilonReport large = t_epsilon_bounds(phi, {0.5});
  EXPECT_FALSE(large.bracket_claimed);
  EXPECT_EQ(large.rows.size(), 1u);
}

TEST(Interpolation, Examples) {
  const InterpolationParams ip = interpolation_params(1, 0, 2);
  EXPECT_DOUBLE_EQ(ip.theta, 0.75);
  EXPECT_LT(oracle::rel(ip.C_tilde, std::pow(4 * kPi, -1.0 / 8)), 1e-14);
  EXPECT_NEAR(ip.C_tilde, 0.72879, 1e-5);
  EXPECT_LT(std::fabs(ip.delta + 1.0 / 3), 1e-15);
  EXPECT_LT(std::fabs(ip.varsigma - 1.0 / 3), 1e-15);
  EXPECT_THROW(interpolation_params(0, 0, 1), InvalidArgument);
  EXPECT_THROW(interpolation_params(1, 0, 0), InvalidArgument);
  EXPECT_THROW(interpolation_params(1, 0, interpolation_m_max(1, 0) * 1.01), InvalidArgument);
}

TEST(Interpolation, BothInequalitiesOnRandomFunctions) {
  const InterpolationParams ip = interpolation_params(1, 0, 2);
  const double S_delta = oracle::best_constant(ip.delta);
  oracle::ProfileGenerator gen(4242);
  const auto g = make_grid(512);
  for (int trial = 0; trial < 100; ++trial) {
    const RadialFunction u = gen(g);
    const double h1 = h1_norm(u);
    const double lg = lp_weighted_norm(u, 8, 1);
    const double lx = lp_weighted_norm(u, 6, 0);
    EXPECT_LE(lg, ip.C_tilde * std::pow(h1, 1 - ip.theta) * std::pow(lx, ip.theta) * (1 + 1e-12));
    EXPECT_LE(lx, std::pow(S_delta, (ip.varsigma - 1) / 2) * std::pow(h1, 1 - ip.varsigma) *
                      std::pow(lg, ip.varsigma) * (1 + 1e-12));
  }
}

TEST(Embedding, FirstEigenvalue) {
  const EmbeddingEstimate e = estimate_embedding_constant(2, 0, make_grid());
  EXPECT_LT(oracle::rel(e.value, kPi * kPi), 1e-3);
}

TEST(Embedding, CriticalCaseFromAbove) {
  const EmbeddingEstimate e = estimate_embedding_constant(6, 0, make_grid(512), 100);
  EXPECT_GE(e.value, best_constant(0) * (1 - 1e-9));
  for (std::size_t i = 1; i < e.trace.size(); ++i) EXPECT_LE(e.trace[i], e.trace[i - 1] * (1 + 1e-12));
}

TEST(Embedding, Errors) {
  const auto g = make_grid(64);
  EXPECT_THROW(estimate_embedding_constant(7, 0, g), InvalidArgument);
  EXPECT_THROW(estimate_embedding_constant(0.5, 0, g), InvalidArgument);
}
