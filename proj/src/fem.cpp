#include "adjoint_cauchy/fem.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/IterativeLinearSolvers>

#include "adjoint_cauchy/errors.hpp"

namespace acy {

namespace {

double chord_length(double radius, std::size_t n) {
  return 2.0 * radius * std::sin(std::numbers::pi / static_cast<double>(n));
}

Eigen::VectorXd to_vector(const BoundaryFunction& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.values.data(), static_cast<Eigen::Index>(f.size()));
}

BoundaryFunction from_vector(const Ring& ring, const Eigen::VectorXd& v) {
  BoundaryFunction f{ring.side, ring.radius, std::vector<double>(v.data(), v.data() + v.size())};
  return f;
}

}  // namespace

LocalMatrix local_stiffness(const Point& p0, const Point& p1, const Point& p2) {
  const double area = 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
  if (!(area > 0.0)) {
    throw InvalidArgument("degenerate or inverted triangle (signed area " + std::to_string(area) +
                          ")");
  }
  const std::array<double, 3> b{p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
  const std::array<double, 3> c{p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
  LocalMatrix k{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) k[i][j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
  }
  return k;
}

SparseSystem assemble_stiffness(const AnnulusMesh& mesh) {
  const auto n = static_cast<Eigen::Index>(mesh.node_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * mesh.triangle_count());
  for (const auto& t : mesh.triangles()) {
    const LocalMatrix k = local_stiffness(mesh.nodes()[t[0]], mesh.nodes()[t[1]], mesh.nodes()[t[2]]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) triplets.emplace_back(t[i], t[j], k[i][j]);
    }
  }
  SparseSystem system;
  system.matrix.resize(n, n);
  system.matrix.setFromTriplets(triplets.begin(), triplets.end());
  system.matrix.makeCompressed();
  system.rhs = Eigen::VectorXd::Zero(n);
  return system;
}

Eigen::VectorXd apply_ring_mass(double radius, const Eigen::VectorXd& values) {
  const Eigen::Index n = values.size();
  const double h = chord_length(radius, static_cast<std::size_t>(n));
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double prev = values[(k + n - 1) % n];
    const double next = values[(k + 1) % n];
    out[k] = h / 6.0 * (prev + 4.0 * values[k] + next);
  }
  return out;
}

Eigen::VectorXd ring_load(const AnnulusMesh& mesh, const BoundaryFunction& g) {
  const Ring& ring = mesh.ring(g.side);
  require_on_ring(g, ring, "ring_load");
  const Eigen::VectorXd local = apply_ring_mass(ring.radius, to_vector(g));
  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.node_count()));
  for (std::size_t k = 0; k < ring.size(); ++k) load[ring.nodes[k]] = local[static_cast<Eigen::Index>(k)];
  return load;
}

Eigen::VectorXd neumann_load(const AnnulusMesh& mesh, const BoundaryFunction& g) {
  require_on_ring(g, mesh.ring(RingSide::outer), "neumann_load");
  return ring_load(mesh, g);
}

double boundary_inner_product(const BoundaryFunction& f, const BoundaryFunction& g) {
  require_same_ring(f, g, "boundary_inner_product");
  // Trapezoid rule on the polygon: every node carries one chord of weight.
  return chord_length(f.radius, f.size()) * to_vector(f).dot(to_vector(g));
}

double interpolant_inner_product(const BoundaryFunction& f, const BoundaryFunction& g) {
  require_same_ring(f, g, "interpolant_inner_product");
  return to_vector(f).dot(apply_ring_mass(f.radius, to_vector(g)));
}

double boundary_norm(const BoundaryFunction& f) {
  return std::sqrt(std::max(0.0, boundary_inner_product(f, f)));
}

MixedBvpSolver::MixedBvpSolver(AnnulusMesh mesh, SolverOptions options)
    : MixedBvpSolver(std::make_shared<const AnnulusMesh>(std::move(mesh)), options) {}

MixedBvpSolver::MixedBvpSolver(std::shared_ptr<const AnnulusMesh> mesh, SolverOptions options)
    : mesh_(std::move(mesh)), options_(options) {
  if (!mesh_) throw InvalidArgument("MixedBvpSolver: null mesh");
  if (!(options_.relative_tolerance > 0.0)) {
    throw InvalidArgument("solver relative tolerance must be positive");
  }
  if (options_.max_iterations == 0) options_.max_iterations = 20 * mesh_->node_count();

  stiffness_ = assemble_stiffness(*mesh_).matrix;
  // Inner-ring nodes are ids 0..n_angular-1, so the Dirichlet nodes form the
  // leading block and the free nodes the trailing one.
  n_fixed_ = mesh_->spec().n_angular;
  const Eigen::Index n_free = stiffness_.rows() - n_fixed_;
  free_block_ = stiffness_.block(n_fixed_, n_fixed_, n_free, n_free);
  coupling_block_ = stiffness_.block(n_fixed_, 0, n_free, n_fixed_);
  free_block_.makeCompressed();
  coupling_block_.makeCompressed();
}

ScalarField MixedBvpSolver::solve(const BoundaryFunction& q_outer,
                                  const BoundaryFunction& w_inner, SolveStats* stats) const {
  require_on_ring(q_outer, mesh_->ring(RingSide::outer), "solve_mixed_bvp (Neumann data)");
  require_on_ring(w_inner, mesh_->ring(RingSide::inner), "solve_mixed_bvp (Dirichlet data)");
  if (!q_outer.all_finite() || !w_inner.all_finite()) {
    throw InvalidArgument("solve_mixed_bvp: boundary data must be finite");
  }

  const Eigen::Index n_free = stiffness_.rows() - n_fixed_;
  const Eigen::VectorXd w = to_vector(w_inner);
  const Eigen::VectorXd load = neumann_load(*mesh_, q_outer);
  const Eigen::VectorXd rhs = load.tail(n_free) - coupling_block_ * w;

  ScalarField field(stiffness_.rows());
  field.head(n_fixed_) = w;

  if (rhs.norm() == 0.0) {
    field.tail(n_free).setZero();
    if (stats) *stats = {};
    return field;
  }

  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(options_.relative_tolerance);
  cg.setMaxIterations(static_cast<Eigen::Index>(options_.max_iterations));
  cg.compute(free_block_);
  field.tail(n_free) = cg.solve(rhs);
  if (cg.info() != Eigen::Success) {
    throw NumericalError("conjugate gradient did not converge in " +
                             std::to_string(cg.iterations()) +
                             " iterations (relative residual " + std::to_string(cg.error()) + ")",
                         cg.error());
  }
  if (stats) {
    stats->iterations = static_cast<std::size_t>(cg.iterations());
    stats->relative_residual = cg.error();
  }
  return field;
}

BoundaryFunction MixedBvpSolver::trace(const ScalarField& field, RingSide side) const {
  return acy::trace(*mesh_, field, side);
}

BoundaryFunction MixedBvpSolver::normal_flux(const ScalarField& field, RingSide side) const {
  if (field.size() != stiffness_.rows()) {
    throw InvalidArgument("normal_flux: field size does not match the mesh");
  }
  const Ring& ring = mesh_->ring(side);
  const Eigen::VectorXd residual = stiffness_ * field;
  Eigen::VectorXd local(static_cast<Eigen::Index>(ring.size()));
  for (std::size_t k = 0; k < ring.size(); ++k) {
    local[static_cast<Eigen::Index>(k)] = residual[ring.nodes[k]];
  }
  return from_vector(ring, local / chord_length(ring.radius, ring.size()));
}

ScalarField solve_mixed_bvp(const AnnulusMesh& mesh, const BoundaryFunction& q_outer,
                            const BoundaryFunction& w_inner, SolverOptions options) {
  return MixedBvpSolver(mesh, options).solve(q_outer, w_inner);
}

BoundaryFunction trace(const AnnulusMesh& mesh, const ScalarField& field, RingSide side) {
  if (static_cast<std::size_t>(field.size()) != mesh.node_count()) {
    throw InvalidArgument("trace: field size does not match the mesh");
  }
  const Ring& ring = mesh.ring(side);
  BoundaryFunction f = BoundaryFunction::zeros(ring.side, ring.radius, ring.size());
  for (std::size_t k = 0; k < ring.size(); ++k) f.values[k] = field[ring.nodes[k]];
  return f;
}

BoundaryFunction normal_flux(const AnnulusMesh& mesh, const ScalarField& field, RingSide side) {
  return MixedBvpSolver(mesh).normal_flux(field, side);
}

}  // namespace acy
