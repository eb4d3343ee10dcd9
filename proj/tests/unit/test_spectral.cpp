#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/spectral.hpp"
#include "test_support.hpp"

using namespace acy;
using acy::testing::kPi;

namespace {

// Brute-force reference: solve the per-mode two-point boundary problems with the
// unscaled basis {r^m, r^-m} (or {1, ln r} for m = 0) as dense 2x2 systems.
struct RadialBasis {
  int m;
  double f(int which, double r) const {
    if (m == 0) return which == 0 ? 1.0 : std::log(r);
    return which == 0 ? std::pow(r, m) : std::pow(r, -m);
  }
  double df(int which, double r) const {
    if (m == 0) return which == 0 ? 0.0 : 1.0 / r;
    return which == 0 ? m * std::pow(r, m - 1) : -m * std::pow(r, -m - 1);
  }
};

// Coefficients of the harmonic with d/dr = q at r_out and value w at r_in.
Eigen::Vector2d mixed_solution(int m, double r_in, double r_out, double q, double w) {
  const RadialBasis b{m};
  Eigen::Matrix2d a;
  a << b.f(0, r_in), b.f(1, r_in), b.df(0, r_out), b.df(1, r_out);
  return a.fullPivLu().solve(Eigen::Vector2d(w, q));
}

double brute_trace_factor(int m, double r_in, double r_out) {
  const Eigen::Vector2d c = mixed_solution(m, r_in, r_out, 0.0, 1.0);
  const RadialBasis b{m};
  return c[0] * b.f(0, r_out) + c[1] * b.f(1, r_out);
}

// The adjoint of a unit inner-ring error is driven by 2·(trace factor) at the outer
// ring; C_j is the magnitude of its radial derivative at the inner ring.
double brute_c_factor(int m, double r_in, double r_out) {
  const double tf = brute_trace_factor(m, r_in, r_out);
  const Eigen::Vector2d c = mixed_solution(m, r_in, r_out, 2.0 * tf, 0.0);
  const RadialBasis b{m};
  return std::abs(c[0] * b.df(0, r_in) + c[1] * b.df(1, r_in));
}

FourierBoundary cos_mode(int j, double amplitude = 1.0) {
  FourierBoundary f;
  f.add_real_term(amplitude, j, Trig::cos);
  return f;
}

}  // namespace

TEST(TraceFactor, Examples) {
  EXPECT_NEAR(trace_factor(2, 1, 3), 9.0 / 41.0, 1e-15);
  EXPECT_NEAR(trace_factor(0, 1, 3), 1.0, 1e-15);
  for (int j = 0; j < 20; ++j) EXPECT_EQ(trace_factor(j, 1, 3), trace_factor(-j, 1, 3));
}

TEST(CFactor, Examples) {
  EXPECT_NEAR(c_factor(2, 1, 3), 486.0 / 1681.0, 1e-15);
  EXPECT_NEAR(1.0 / c_factor(2, 1, 3), 1681.0 / 486.0, 1e-14);
  EXPECT_NEAR(c_factor(0, 1, 3), 6.0, 1e-14);
  EXPECT_EQ(2.0 / c_factor(0, 1, 3), 1.0 / 3.0);
  EXPECT_NEAR(c_factor(1, 1, 3), 2.16, 1e-14);
}

TEST(CFactor, MatchesBruteForceOracle) {
  for (const auto& [ri, ro] : {std::pair{1.0, 3.0}, std::pair{0.5, 0.8}, std::pair{2.0, 7.0}}) {
    for (int j = 0; j <= 12; ++j) {
      const double tf = brute_trace_factor(j, ri, ro);
      const double c = brute_c_factor(j, ri, ro);
      EXPECT_NEAR(trace_factor(j, ri, ro), tf, 1e-12 * std::max(1.0, tf)) << j;
      EXPECT_NEAR(c_factor(j, ri, ro), c, 1e-10 * std::max(1.0, c)) << j;
    }
  }
}

TEST(CFactor, StrictlyDecreasing) {
  for (int j = 0; j < 40; ++j) {
    EXPECT_GT(c_factor(j, 1, 3), c_factor(j + 1, 1, 3)) << j;
    EXPECT_GT(c_factor(j + 1, 1, 3), 0.0);
  }
  // Large modes stay finite and positive in the scaled evaluation
  // (3^-599 is still a normal double).
  EXPECT_GT(c_factor(300, 1, 3), 0.0);
  EXPECT_LT(c_factor(300, 1, 3), c_factor(299, 1, 3));
}

TEST(CFactor, RejectsBadRadii) {
  EXPECT_THROW(c_factor(1, 3, 1), InvalidArgument);
  EXPECT_THROW(trace_factor(1, 0, 1), InvalidArgument);
}

TEST(FourierBoundaryType, RealTermsAreHermitian) {
  FourierBoundary f;
  f.add_real_term(2.0, 1, Trig::sin).add_real_term(-0.5, 1, Trig::cos).add_real_term(0.25, 2, Trig::cos);
  EXPECT_NEAR(std::abs(f.at(1) - std::complex<double>(-0.25, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.at(-1) - std::conj(f.at(1))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.at(2) - 0.125), 0.0, 1e-15);
  EXPECT_EQ(f.max_mode(), 2);
  for (double t : {0.0, 0.3, 2.0, 5.5}) {
    EXPECT_NEAR(f.evaluate(t), 2 * std::sin(t) - 0.5 * std::cos(t) + 0.25 * std::cos(2 * t), 1e-14);
  }
}

TEST(GradientCoefficients, Examples) {
  const FourierBoundary g = gradient_coefficients(cos_mode(2), 1, 3);
  EXPECT_NEAR(g.at(2).real(), -0.5 * 486.0 / 1681.0, 1e-15);
  EXPECT_NEAR(g.at(-2).real(), -0.5 * 486.0 / 1681.0, 1e-15);
  EXPECT_EQ(gradient_coefficients(FourierBoundary{}, 1, 3).l2_norm(), 0.0);
  const FourierBoundary c = gradient_coefficients(cos_mode(0, 0.7), 1, 3);
  EXPECT_NEAR(c.at(0).real(), -6 * 0.7, 1e-14);
}

TEST(StepModes, Examples) {
  const double c2 = c_factor(2, 1, 3);
  const ModeState s1 = step_modes({cos_mode(2), 0}, 1.0 / c2, 1, 3);
  EXPECT_EQ(s1.k, 1);
  EXPECT_LE(std::abs(s1.mu.at(2)), 1e-16);

  FourierBoundary mu;
  mu.add_real_term(0.3, 0, Trig::cos).add_real_term(1.1, 1, Trig::sin).add_real_term(-0.4, 2, Trig::cos);
  const ModeState same = step_modes({mu, 4}, 0.0, 1, 3);
  EXPECT_EQ(same.k, 5);
  for (const auto& [j, a] : mu.coefficients) EXPECT_EQ(same.mu.at(j), a);

  ModeState s{mu, 0};
  for (int k = 0; k <= 2; ++k) s = step_modes(s, 1.0 / c_factor(2 - k, 1, 3), 1, 3);
  EXPECT_LE(s.mu.l2_norm(), 1e-15);
}

TEST(Compression, Examples) {
  const double c0 = c_factor(0, 1, 3);
  const double c2 = c_factor(2, 1, 3);
  EXPECT_NEAR(compression_factor(2, 2, 1.0 / c2, 1, 3), 0.0, 1e-15);
  EXPECT_NEAR(compression_factor(0, 2, 2.0 / (c0 + c2), 1, 3), (c0 - c2) / (c0 + c2), 1e-14);
  EXPECT_NEAR((c0 - c2) / (c0 + c2), 0.9081, 1e-4);
  for (auto [m, n] : {std::pair{0, 0}, std::pair{1, 5}, std::pair{3, 9}}) {
    EXPECT_EQ(compression_factor(m, n, 0.0, 1, 3), 1.0);
  }
}

TEST(Compression, OptimalStepBoundsEveryMode) {
  const int m = 1, n = 6;
  const double cm = c_factor(m, 1, 3), cn = c_factor(n, 1, 3);
  const double rho = 2.0 / (cm + cn);
  for (int j = m; j <= n; ++j) {
    EXPECT_LE(std::abs(1 - c_factor(j, 1, 3) * rho), (cm - cn) / (cm + cn) + 1e-15);
  }
}

TEST(Compression, ContractionBoundHoldsAndIsTight) {
  std::mt19937 rng(42);
  std::normal_distribution<double> n;
  FourierBoundary mu;
  for (int j = 0; j <= 4; ++j) mu.add_real_term(n(rng), j, Trig::cos).add_real_term(n(rng), j, Trig::sin);
  for (double rho : {0.05, 0.1, 0.2, 0.3}) {
    const ModeState next = step_modes({mu, 0}, rho, 1, 3);
    EXPECT_LE(next.mu.l2_norm(), compression_factor(0, 4, rho, 1, 3) * mu.l2_norm() + 1e-14);
  }
  // A single extreme mode attains the bound.
  const double rho = 0.2;
  const ModeState only0 = step_modes({cos_mode(0), 0}, rho, 1, 3);
  EXPECT_NEAR(only0.mu.l2_norm(), std::abs(1 - 6 * rho) * cos_mode(0).l2_norm(), 1e-14);
}

TEST(SolveSeries, DirichletOnlyMode2) {
  const SeriesField field = solve_series(FourierBoundary{}, cos_mode(2), 1, 3);
  const FourierBoundary t = field.trace_at(3);
  EXPECT_NEAR(t.at(2).real(), 9.0 / 41.0 * 0.5, 1e-14);
  EXPECT_NEAR(t.at(-2).real(), 9.0 / 41.0 * 0.5, 1e-14);
}

TEST(SolveSeries, QuadraticHarmonicIsExact) {
  const SeriesField field = solve_series(cos_mode(2, 6.0), cos_mode(2), 1, 3);
  for (double r : {1.0, 1.7, 2.5, 3.0}) {
    for (double t : {0.0, 0.4, 1.9, 4.4}) {
      EXPECT_NEAR(field.value(r, t), r * r * std::cos(2 * t), 1e-12);
      EXPECT_NEAR(field.radial_derivative(r, t), 2 * r * std::cos(2 * t), 1e-12);
    }
  }
  EXPECT_NEAR(field.inner_flux().evaluate(0.3), -2 * std::cos(0.6), 1e-12);
  EXPECT_NEAR(field.outer_flux().evaluate(0.3), 6 * std::cos(0.6), 1e-12);
}

TEST(SolveSeries, ZeroDataGivesZeroField) {
  const SeriesField field = solve_series(FourierBoundary{}, FourierBoundary{}, 1, 3);
  EXPECT_EQ(field.value(2.0, 1.0), 0.0);
  EXPECT_TRUE(field.trace_at(3).empty() || field.trace_at(3).l2_norm() == 0.0);
}

TEST(SolveSeries, ReproducesBoundaryDataForMixedBand) {
  std::mt19937 rng(9);
  std::normal_distribution<double> n;
  FourierBoundary q, w;
  for (int j = 0; j <= 8; ++j) {
    q.add_real_term(n(rng), j, Trig::cos).add_real_term(n(rng), j, Trig::sin);
    w.add_real_term(n(rng), j, Trig::cos).add_real_term(n(rng), j, Trig::sin);
  }
  const SeriesField field = solve_series(q, w, 1, 3);
  for (double t = 0.0; t < 6.28; t += 0.37) {
    EXPECT_NEAR(field.value(1.0, t), w.evaluate(t), 1e-12);
    EXPECT_NEAR(field.radial_derivative(3.0, t), q.evaluate(t), 1e-12);
  }
  // Each mode is an exact harmonic: check the radial ODE r(r f')' = m² f numerically.
  for (const auto& [j, mode] : field.modes()) {
    (void)mode;
    const double r = 2.0, h = 1e-4;
    auto g = [&](double s) { return s * field.mode_radial_derivative(j, s); };
    const std::complex<double> lhs = r * (g(r + h) - g(r - h)) / (2 * h);
    const std::complex<double> rhs = double(j * j) * field.mode_value(j, r);
    EXPECT_LE(std::abs(lhs - rhs), 1e-6 * std::max(1.0, std::abs(rhs))) << j;
  }
}

TEST(SolveSeries, ChainedGradientMatchesClosedForm) {
  // Error μ on the inner ring, zero flux at the outer ring: its outer trace drives the
  // adjoint with −2·trace; J' = −(outward inner flux of the adjoint).
  std::mt19937 rng(13);
  std::normal_distribution<double> n;
  FourierBoundary mu;
  for (int j = 0; j <= 6; ++j) mu.add_real_term(n(rng), j, Trig::cos).add_real_term(n(rng), j, Trig::sin);
  const FourierBoundary e = solve_series(FourierBoundary{}, mu, 1, 3).trace_at(3);
  const FourierBoundary adjoint_flux = solve_series(-2.0 * e, FourierBoundary{}, 1, 3).inner_flux();
  const FourierBoundary chained = -1.0 * adjoint_flux;
  const FourierBoundary direct = gradient_coefficients(mu, 1, 3);
  EXPECT_LE((chained - direct).l2_norm(), 1e-12 * direct.l2_norm());
}

TEST(FunctionalValue, Examples) {
  EXPECT_NEAR(functional_value(cos_mode(2), 1, 3), 243 * kPi / 1681, 1e-14);
  EXPECT_NEAR(243 * kPi / 1681, 0.4541, 1e-4);
  EXPECT_EQ(functional_value(FourierBoundary{}, 1, 3), 0.0);
  EXPECT_NEAR(functional_value(cos_mode(0, 0.5), 1, 3), 2 * kPi * 3 * 0.25, 1e-14);
}
