#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/fem.hpp"
#include "adjoint_cauchy/fourier.hpp"
#include "test_support.hpp"

using namespace acy;
using acy::testing::kPi;

namespace {

BoundaryFunction ring_samples(std::size_t n, double radius, const std::function<double(double)>& fn) {
  return BoundaryFunction::sampled(RingSide::inner, radius, n, fn);
}

FourierBoundary random_band(std::mt19937& rng, int low, int high, double radius = 1.0) {
  std::normal_distribution<double> n;
  FourierBoundary c;
  c.radius = radius;
  for (int j = low; j <= high; ++j) {
    c.add_real_term(n(rng), j, Trig::cos);
    if (j > 0) c.add_real_term(n(rng), j, Trig::sin);
  }
  return c;
}

}  // namespace

TEST(Analyze, Cos2OnEightSamples) {
  const FourierBoundary c = analyze(ring_samples(8, 1.0, [](double t) { return std::cos(2 * t); }));
  EXPECT_NEAR(std::abs(c.at(2) - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.at(-2) - 0.5), 0.0, 1e-12);
  for (int j = -3; j <= 3; ++j) {
    if (std::abs(j) != 2) EXPECT_LE(std::abs(c.at(j)), 1e-12) << j;
  }
}

TEST(Analyze, ThreeTermSignal) {
  const FourierBoundary c = analyze(ring_samples(
      32, 1.0, [](double t) { return 2 * std::sin(t) - 0.5 * std::cos(t) + 0.25 * std::cos(2 * t); }));
  EXPECT_NEAR(std::abs(c.at(1) - std::complex<double>(-0.25, -1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.at(-1) - std::complex<double>(-0.25, 1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.at(2) - 0.125), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.at(-2) - 0.125), 0.0, 1e-12);
  EXPECT_LE(std::abs(c.at(0)), 1e-12);
}

TEST(Analyze, ZeroSamplesGiveEmptySet) {
  EXPECT_TRUE(analyze(BoundaryFunction::zeros(RingSide::outer, 3.0, 16)).empty());
}

TEST(Analyze, TooFewSamplesForBand) {
  const auto f = ring_samples(8, 1.0, [](double t) { return std::cos(t); });
  EXPECT_EQ(resolvable_mode(8), 3);
  EXPECT_NO_THROW(analyze(f, 3));
  EXPECT_THROW(analyze(f, 4), InvalidArgument);
}

TEST(Analyze, RecordsRadius) {
  const auto f = BoundaryFunction::sampled(RingSide::outer, 3.0, 16, [](double t) { return std::cos(t); });
  EXPECT_EQ(analyze(f).radius, 3.0);
}

TEST(Synthesize, Examples) {
  FourierBoundary c;
  c.add_real_term(1.0, 2, Trig::cos);
  const BoundaryFunction f = synthesize(c, RingSide::inner, 8);
  ASSERT_EQ(f.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(f.values[k], std::cos(2 * f.angle(k)), 1e-15);
  const BoundaryFunction z = synthesize(FourierBoundary{}, RingSide::inner, 8);
  for (double v : z.values) EXPECT_EQ(v, 0.0);
}

TEST(Synthesize, BandAboveNyquistRejected) {
  FourierBoundary c;
  c.add_real_term(1.0, 5, Trig::cos);
  EXPECT_THROW(synthesize(c, RingSide::inner, 8), InvalidArgument);
  EXPECT_NO_THROW(synthesize(c, RingSide::inner, 11));
}

TEST(Synthesize, RoundTripRandomBandLimited) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 24 + 7 * trial;
    const FourierBoundary c = random_band(rng, 0, resolvable_mode(n));
    const BoundaryFunction f = synthesize(c, RingSide::inner, n);
    const BoundaryFunction back = synthesize(analyze(f), RingSide::inner, n);
    EXPECT_LE(acy::testing::max_diff(f.values, back.values), 1e-12);
    const FourierBoundary again = analyze(f);
    for (const auto& [j, a] : c.coefficients) EXPECT_LE(std::abs(again.at(j) - a), 1e-12) << j;
  }
}

TEST(DetectBand, Examples) {
  const auto ex1 = ring_samples(160, 3.0, [](double t) { return 9 * std::cos(2 * t); });
  EXPECT_EQ(detect_band(analyze(ex1)), (Band{2, 2}));
  const auto ex2 = ring_samples(160, 1.0, [](double t) {
    return 2 * std::sin(t) - 0.5 * std::cos(t) + 0.25 * std::cos(2 * t);
  });
  EXPECT_EQ(detect_band(analyze(ex2)), (Band{1, 2}));
  EXPECT_FALSE(detect_band(analyze(BoundaryFunction::zeros(RingSide::inner, 1.0, 16))).has_value());
}

TEST(DetectBand, ScaleInvariant) {
  std::mt19937 rng(8);
  const FourierBoundary c = random_band(rng, 3, 7);
  const auto band = detect_band(c);
  ASSERT_TRUE(band.has_value());
  EXPECT_EQ(*band, (Band{3, 7}));
  for (double s : {1e-9, 0.01, -3.0, 1e6}) EXPECT_EQ(detect_band(s * c), band) << s;
}

TEST(DetectBand, RelativeThresholdIgnoresNoise) {
  FourierBoundary c;
  c.add_real_term(1.0, 2, Trig::cos).add_real_term(1e-10, 9, Trig::cos).add_real_term(1e-3, 0, Trig::cos);
  EXPECT_EQ(detect_band(c), (Band{0, 2}));
}

TEST(Parseval, MatchesRingQuadrature) {
  std::mt19937 rng(4);
  for (double radius : {1.0, 3.0}) {
    const FourierBoundary c = random_band(rng, 0, 8, radius);
    const BoundaryFunction f = synthesize(c, RingSide::outer, 64);
    BoundaryFunction g = f;
    g.radius = radius;
    double sum = 0.0;
    for (const auto& [j, a] : c.coefficients) sum += std::norm(a);
    const double parseval = 2 * kPi * radius * sum;
    EXPECT_LT(std::abs(boundary_inner_product(g, g) - parseval) / parseval, 0.005);
  }
}

TEST(Analyze, Linear) {
  std::mt19937 rng(17);
  const auto f = synthesize(random_band(rng, 0, 10), RingSide::inner, 40);
  const auto g = synthesize(random_band(rng, 0, 10), RingSide::inner, 40);
  const FourierBoundary lhs = analyze(axpy(scaled(f, 2.0), -0.5, g));
  const FourierBoundary rhs = 2.0 * analyze(f) - 0.5 * analyze(g);
  EXPECT_LE((lhs - rhs).l2_norm(), 1e-12);
}
