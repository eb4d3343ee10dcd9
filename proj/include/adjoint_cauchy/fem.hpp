#pragma once

#include <array>
#include <cstddef>
#include <memory>

#include <Eigen/Sparse>

#include "adjoint_cauchy/boundary.hpp"
#include "adjoint_cauchy/geometry.hpp"

namespace acy {

using ScalarField = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using LocalMatrix = std::array<std::array<double, 3>, 3>;

struct SparseSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};

// Exact P1 stiffness of -Laplace on one triangle. Throws InvalidArgument when
// the signed area is not positive.
LocalMatrix local_stiffness(const Point& p0, const Point& p1, const Point& p2);

// Pure Neumann stiffness matrix of the whole mesh (rhs left at zero).
SparseSystem assemble_stiffness(const AnnulusMesh& mesh);

// Consistent P1 mass matrix of a ring of n equal chords: for each edge
// h/6 * [[2, 1], [1, 2]].
Eigen::VectorXd apply_ring_mass(double radius, const Eigen::VectorXd& values);

// Boundary P1 mass matrix applied to g, scattered into a global vector.
Eigen::VectorXd ring_load(const AnnulusMesh& mesh, const BoundaryFunction& g);
// ring_load restricted to the outer ring; rejects data on any other ring.
Eigen::VectorXd neumann_load(const AnnulusMesh& mesh, const BoundaryFunction& g);

// Integral of the piecewise-linear interpolant of f*g over the polygonal ring,
// i.e. the trapezoid rule with one chord length of weight per node.
double boundary_inner_product(const BoundaryFunction& f, const BoundaryFunction& g);
double boundary_norm(const BoundaryFunction& f);

// Exact integral of the product of the two piecewise-linear interpolants
// (f^T M g with the consistent ring mass). The FEM misfit functional uses this
// form because it is the one the Neumann load of the adjoint problem sees.
double interpolant_inner_product(const BoundaryFunction& f, const BoundaryFunction& g);

struct SolverOptions {
  double relative_tolerance = 1e-10;
  // 0 selects 20 * node count.
  std::size_t max_iterations = 0;
};

struct SolveStats {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

// Mixed problem  -Lap v = 0,  dv/dn = q on the outer ring,  v = w on the
// inner ring. The constrained blocks are assembled once; solve() is const
// and may be called from several threads.
class MixedBvpSolver {
public:
  explicit MixedBvpSolver(std::shared_ptr<const AnnulusMesh> mesh, SolverOptions options = {});
  explicit MixedBvpSolver(AnnulusMesh mesh, SolverOptions options = {});

  const AnnulusMesh& mesh() const noexcept { return *mesh_; }
  const SolverOptions& options() const noexcept { return options_; }
  const SparseMatrix& stiffness() const noexcept { return stiffness_; }

  ScalarField solve(const BoundaryFunction& q_outer, const BoundaryFunction& w_inner,
                    SolveStats* stats = nullptr) const;

  BoundaryFunction trace(const ScalarField& field, RingSide side) const;

  // Variational flux: (K v) restricted to the ring, divided by the lumped ring
  // mass (one chord per node). Paired with boundary_inner_product this makes
  // <flux, w> equal to the discrete Green identity exactly. Normals point out of the annulus (toward the origin
  // on the inner ring). The field must carry no Neumann load on `side` other
  // than the flux itself, which holds for every solution of solve().
  BoundaryFunction normal_flux(const ScalarField& field, RingSide side = RingSide::inner) const;

private:
  std::shared_ptr<const AnnulusMesh> mesh_;
  SolverOptions options_;
  SparseMatrix stiffness_;
  SparseMatrix free_block_;
  SparseMatrix coupling_block_;
  Eigen::Index n_fixed_ = 0;
};

ScalarField solve_mixed_bvp(const AnnulusMesh& mesh, const BoundaryFunction& q_outer,
                            const BoundaryFunction& w_inner, SolverOptions options = {});

BoundaryFunction trace(const AnnulusMesh& mesh, const ScalarField& field, RingSide side);
BoundaryFunction normal_flux(const AnnulusMesh& mesh, const ScalarField& field,
                             RingSide side = RingSide::inner);

}  // namespace acy
