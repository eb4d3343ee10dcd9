#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/fem.hpp"
#include "test_support.hpp"

using namespace acy;
using acy::testing::kPi;
using acy::testing::relative_l2;
using acy::testing::sample;

namespace {

const AnnulusSpec kDefault{1.0, 3.0, 27, 160};

const MixedBvpSolver& default_solver() {
  static const MixedBvpSolver solver(generate_mesh(kDefault));
  return solver;
}

BoundaryFunction on(const MixedBvpSolver& s, RingSide side, double (*fn)(double)) {
  return BoundaryFunction::on_ring(s.mesh().ring(side), fn);
}

double cos2(double t) { return std::cos(2 * t); }
double six_cos2(double t) { return 6 * std::cos(2 * t); }
double one(double) { return 1.0; }
double zero(double) { return 0.0; }

}  // namespace

TEST(LocalStiffness, UnitRightTriangle) {
  const LocalMatrix k = local_stiffness({0, 0}, {1, 0}, {0, 1});
  const double want[3][3] = {{1, -0.5, -0.5}, {-0.5, 0.5, 0}, {-0.5, 0, 0.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(k[i][j], want[i][j], 1e-15);
}

TEST(LocalStiffness, RejectsDegenerateAndInverted) {
  EXPECT_THROW(local_stiffness({0, 0}, {1, 0}, {2, 0}), InvalidArgument);
  EXPECT_THROW(local_stiffness({0, 0}, {0, 1}, {1, 0}), InvalidArgument);
}

TEST(Stiffness, SymmetricWithZeroRowSums) {
  for (const AnnulusSpec spec : {AnnulusSpec{1, 3, 2, 4}, AnnulusSpec{1, 3, 6, 30}, kDefault}) {
    const SparseMatrix k = assemble_stiffness(generate_mesh(spec)).matrix;
    const SparseMatrix kt = k.transpose();
    EXPECT_LE((k - kt).norm(), 1e-14 * k.norm());
    double kmax = 0.0;
    for (int c = 0; c < k.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(k, c); it; ++it) kmax = std::max(kmax, std::abs(it.value()));
    const Eigen::VectorXd sums = k * Eigen::VectorXd::Ones(k.cols());
    EXPECT_LE(sums.cwiseAbs().maxCoeff(), 1e-12 * kmax);
  }
}

TEST(Stiffness, EnergyNonNegative) {
  const SparseMatrix k = assemble_stiffness(generate_mesh({1, 3, 5, 24})).matrix;
  std::mt19937 rng(7);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd u(k.cols());
    for (auto& x : u) x = dist(rng);
    EXPECT_GE(u.dot(k * u), 0.0);
  }
}

TEST(NeumannLoad, ConstantSumsToPerimeter) {
  const auto mesh = generate_mesh({1, 3, 3, 20});
  const auto g = BoundaryFunction::on_ring(mesh.ring(RingSide::outer), one);
  EXPECT_NEAR(neumann_load(mesh, g).sum(), 2 * 20 * 3 * std::sin(kPi / 20), 1e-12);
}

TEST(NeumannLoad, Cos2SumsToZeroAndZeroGivesZero) {
  const auto mesh = generate_mesh({1, 3, 3, 24});
  const auto g = BoundaryFunction::on_ring(mesh.ring(RingSide::outer), cos2);
  EXPECT_NEAR(neumann_load(mesh, g).sum(), 0.0, 1e-10);
  const auto z = BoundaryFunction::on_ring(mesh.ring(RingSide::outer), zero);
  EXPECT_EQ(neumann_load(mesh, z).cwiseAbs().maxCoeff(), 0.0);
}

TEST(NeumannLoad, RingMismatchRejected) {
  const auto mesh = generate_mesh({1, 3, 3, 24});
  EXPECT_THROW(neumann_load(mesh, BoundaryFunction::on_ring(mesh.ring(RingSide::inner), one)),
               InvalidArgument);
  EXPECT_THROW(neumann_load(mesh, BoundaryFunction::sampled(RingSide::outer, 3.0, 12, one)),
               InvalidArgument);
}

TEST(MixedBvp, ConstantDirichletGivesConstantField) {
  const auto& s = default_solver();
  const ScalarField v = s.solve(on(s, RingSide::outer, zero), on(s, RingSide::inner, one));
  EXPECT_LE((v.array() - 1.0).abs().maxCoeff(), 1e-10);
  const BoundaryFunction t = s.trace(v, RingSide::inner);
  for (double x : t.values) EXPECT_EQ(x, 1.0);
}

TEST(MixedBvp, ExactQuadraticHarmonic) {
  // r^2 cos 2θ: Neumann data 6cos2θ at r=3, Dirichlet cos2θ at r=1.
  const auto& s = default_solver();
  const ScalarField v = s.solve(on(s, RingSide::outer, six_cos2), on(s, RingSide::inner, cos2));
  const BoundaryFunction t = s.trace(v, RingSide::outer);
  EXPECT_LT(relative_l2(t.values, sample(t, [](double th) { return 9 * std::cos(2 * th); })), 0.01);
}

TEST(MixedBvp, DirichletOnlyMode2TraceFactor) {
  const auto& s = default_solver();
  const ScalarField v = s.solve(on(s, RingSide::outer, zero), on(s, RingSide::inner, cos2));
  const BoundaryFunction t = s.trace(v, RingSide::outer);
  EXPECT_LT(relative_l2(t.values, sample(t, [](double th) { return 9.0 / 41.0 * std::cos(2 * th); })),
            0.01);
}

TEST(MixedBvp, ZeroDataGivesZeroField) {
  const auto& s = default_solver();
  const ScalarField v = s.solve(on(s, RingSide::outer, zero), on(s, RingSide::inner, zero));
  EXPECT_EQ(v.cwiseAbs().maxCoeff(), 0.0);
}

TEST(MixedBvp, NonConvergenceCarriesResidual) {
  SolverOptions opts;
  opts.max_iterations = 1;
  const MixedBvpSolver s(generate_mesh({1, 3, 8, 32}), opts);
  try {
    s.solve(on(s, RingSide::outer, six_cos2), on(s, RingSide::inner, cos2));
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_GT(e.residual(), 1e-10);
  }
}

TEST(MixedBvp, RejectsWrongRings) {
  const auto& s = default_solver();
  EXPECT_THROW(s.solve(on(s, RingSide::inner, zero), on(s, RingSide::inner, zero)), InvalidArgument);
  EXPECT_THROW(s.solve(on(s, RingSide::outer, zero), on(s, RingSide::outer, zero)), InvalidArgument);
}

TEST(MixedBvp, ReportsSolveStats) {
  const auto& s = default_solver();
  SolveStats stats;
  s.solve(on(s, RingSide::outer, six_cos2), on(s, RingSide::inner, cos2), &stats);
  EXPECT_GT(stats.iterations, 0u);
  EXPECT_LE(stats.relative_residual, 1e-10);
}

TEST(MixedBvp, MaximumPrinciple) {
  const auto& s = default_solver();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BoundaryFunction w = on(s, RingSide::inner, zero);
  for (auto& x : w.values) x = u(rng);
  const ScalarField v = s.solve(on(s, RingSide::outer, zero), w);
  const double lo = *std::min_element(w.values.begin(), w.values.end());
  const double hi = *std::max_element(w.values.begin(), w.values.end());
  EXPECT_GE(v.minCoeff(), lo - 1e-8);
  EXPECT_LE(v.maxCoeff(), hi + 1e-8);
}

TEST(MixedBvp, Linearity) {
  const auto& s = default_solver();
  std::mt19937 rng(5);
  std::normal_distribution<double> n;
  auto rand_on = [&](RingSide side) {
    BoundaryFunction f = on(s, side, zero);
    for (auto& x : f.values) x = n(rng);
    return f;
  };
  const auto q1 = rand_on(RingSide::outer), q2 = rand_on(RingSide::outer);
  const auto w1 = rand_on(RingSide::inner), w2 = rand_on(RingSide::inner);
  const double a = 0.7, b = -1.3;
  const ScalarField lhs = s.solve(axpy(scaled(q1, a), b, q2), axpy(scaled(w1, a), b, w2));
  const ScalarField rhs = a * s.solve(q1, w1) + b * s.solve(q2, w2);
  EXPECT_LE((lhs - rhs).norm() / rhs.norm(), 1e-8);
}

TEST(Trace, ConstantField) {
  const auto& s = default_solver();
  const ScalarField c = ScalarField::Constant(static_cast<Eigen::Index>(s.mesh().node_count()), 2.5);
  for (RingSide side : {RingSide::inner, RingSide::outer}) {
    const BoundaryFunction t = s.trace(c, side);
    EXPECT_EQ(t.size(), 160u);
    for (double x : t.values) EXPECT_EQ(x, 2.5);
  }
}

TEST(NormalFlux, ConstantFieldHasNoFlux) {
  const auto& s = default_solver();
  const ScalarField c = ScalarField::Constant(static_cast<Eigen::Index>(s.mesh().node_count()), -4.0);
  for (double x : s.normal_flux(c).values) EXPECT_NEAR(x, 0.0, 1e-10);
}

TEST(NormalFlux, QuadraticHarmonicInnerFlux) {
  // −∂/∂r of r²cos2θ at r = 1.
  const auto& s = default_solver();
  const ScalarField v = s.solve(on(s, RingSide::outer, six_cos2), on(s, RingSide::inner, cos2));
  const BoundaryFunction f = s.normal_flux(v);
  EXPECT_LT(relative_l2(f.values, sample(f, [](double th) { return -2 * std::cos(2 * th); })), 0.01);
}

TEST(NormalFlux, OuterFluxReproducesNeumannLoad) {
  // On the Neumann ring the residual is the load itself, so lumped flux times the
  // chord length equals the consistent mass applied to the data.
  const auto& s = default_solver();
  const auto q = on(s, RingSide::outer, six_cos2);
  const ScalarField v = s.solve(q, on(s, RingSide::inner, cos2));
  const BoundaryFunction f = s.normal_flux(v, RingSide::outer);
  const double h = 2 * 3.0 * std::sin(kPi / 160);
  const Eigen::VectorXd mq = apply_ring_mass(3.0, Eigen::Map<const Eigen::VectorXd>(q.values.data(), 160));
  for (std::size_t k = 0; k < f.size(); ++k) {
    EXPECT_NEAR(f.values[k] * h, mq[static_cast<Eigen::Index>(k)], 1e-9);
  }
  EXPECT_LT(relative_l2(f.values, sample(f, six_cos2)), 0.01);
}

TEST(NormalFlux, AdjointOfExample1AtZero) {
  // Adjoint data 2(v0 − ū) with ū = 9cos2θ. The outward flux on the inner ring is
  // +C₂cos2θ, so that J' = −flux = −(486/1681)cos2θ.
  const auto& s = default_solver();
  const ScalarField v0 = s.solve(on(s, RingSide::outer, six_cos2), on(s, RingSide::inner, zero));
  BoundaryFunction data = s.trace(v0, RingSide::outer);
  for (std::size_t k = 0; k < data.size(); ++k) data.values[k] = 2 * (data.values[k] - 9 * std::cos(2 * data.angle(k)));
  const ScalarField vh = s.solve(data, on(s, RingSide::inner, zero));
  const BoundaryFunction f = s.normal_flux(vh);
  EXPECT_LT(relative_l2(f.values, sample(f, [](double th) { return 486.0 / 1681.0 * std::cos(2 * th); })),
            0.03);
}

TEST(InnerProduct, PerimeterOrthogonalityAndCos2) {
  const auto mesh = generate_mesh({1, 3, 2, 64});
  const Ring& ring = mesh.ring(RingSide::inner);
  const auto f1 = BoundaryFunction::on_ring(ring, one);
  EXPECT_NEAR(boundary_inner_product(f1, f1), 2 * 64 * std::sin(kPi / 64), 1e-12);
  const auto c = BoundaryFunction::on_ring(ring, [](double t) { return std::cos(t); });
  const auto sn = BoundaryFunction::on_ring(ring, [](double t) { return std::sin(t); });
  EXPECT_NEAR(boundary_inner_product(c, sn), 0.0, 1e-10);
  const auto c2 = BoundaryFunction::on_ring(ring, cos2);
  EXPECT_LT(std::abs(boundary_inner_product(c2, c2) - kPi) / kPi, 1e-3);
  EXPECT_NEAR(boundary_norm(c2), std::sqrt(boundary_inner_product(c2, c2)), 1e-15);
  EXPECT_THROW(boundary_inner_product(c2, BoundaryFunction::on_ring(mesh.ring(RingSide::outer), one)),
               InvalidArgument);
}

TEST(InnerProduct, InterpolantFormIsExactForPiecewiseLinear) {
  // On one ring both forms integrate constants exactly; the consistent form
  // damps mode j by (2 + cos(j h))/3 with h the angular step.
  const auto mesh = generate_mesh({1, 3, 2, 64});
  const Ring& ring = mesh.ring(RingSide::inner);
  const auto f1 = BoundaryFunction::on_ring(ring, one);
  EXPECT_NEAR(interpolant_inner_product(f1, f1), boundary_inner_product(f1, f1), 1e-13);
  const auto c2 = BoundaryFunction::on_ring(ring, cos2);
  const double h = 2 * kPi / 64;
  EXPECT_NEAR(interpolant_inner_product(c2, c2), boundary_inner_product(c2, c2) * (2 + std::cos(2 * h)) / 3,
              1e-12);
}
