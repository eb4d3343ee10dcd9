#include "adjoint_cauchy/iteration.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/fourier.hpp"
#include "adjoint_cauchy/spectral.hpp"
#include "io_util.hpp"

namespace acy {

namespace {

Ring uniform_ring(RingSide side, double radius, std::size_t n) {
  Ring ring;
  ring.side = side;
  ring.radius = radius;
  for (std::size_t k = 0; k < n; ++k) {
    ring.nodes.push_back(static_cast<int>(k));
    ring.angles.push_back(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return ring;
}

}  // namespace

void CauchyData::validate() const {
  if (u_bar.side != RingSide::outer || q_bar.side != RingSide::outer) {
    throw InvalidArgument("Cauchy data must live on the outer ring");
  }
  require_same_ring(u_bar, q_bar, "Cauchy data");
  if (!u_bar.all_finite() || !q_bar.all_finite()) {
    throw InvalidArgument("Cauchy data must be finite");
  }
}

BoundaryFunction Backend::zero(RingSide side) const {
  const Ring& r = ring(side);
  return BoundaryFunction::zeros(r.side, r.radius, r.size());
}

BoundaryFunction Backend::sample(RingSide side, const std::function<double(double)>& fn) const {
  return BoundaryFunction::on_ring(ring(side), fn);
}

FemBackend::FemBackend(const AnnulusSpec& spec, SolverOptions options)
    : solver_(generate_mesh(spec), options) {}

BoundaryFunction FemBackend::primary_trace(const BoundaryFunction& q_bar,
                                           const BoundaryFunction& omega) const {
  return solver_.trace(solver_.solve(q_bar, omega), RingSide::outer);
}

BoundaryFunction FemBackend::adjoint_gradient(const BoundaryFunction& adjoint_data) const {
  const ScalarField adjoint = solver_.solve(adjoint_data, zero(RingSide::inner));
  return scaled(solver_.normal_flux(adjoint, RingSide::inner), -1.0);
}

double FemBackend::inner_product(const BoundaryFunction& f, const BoundaryFunction& g) const {
  return boundary_inner_product(f, g);
}

// The adjoint load applies the consistent mass to 2(v - u_bar), so J must use
// the same form for the adjoint gradient to be its exact derivative.
double FemBackend::misfit_functional(const BoundaryFunction& misfit) const {
  return interpolant_inner_product(misfit, misfit);
}

SpectralBackend::SpectralBackend(double r_inner, double r_outer, std::size_t ring_size,
                                 int band_cap)
    : r_inner_(r_inner), r_outer_(r_outer), band_cap_(band_cap) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) {
    throw InvalidArgument("spectral backend: radii must satisfy 0 < r_inner < r_outer");
  }
  if (band_cap < 0) throw InvalidArgument("spectral backend: negative band cap");
  if (resolvable_mode(ring_size) < band_cap) {
    throw InvalidArgument("spectral backend: a " + std::to_string(ring_size) +
                          "-point ring cannot resolve the band cap " + std::to_string(band_cap) +
                          " (need at least " + std::to_string(2 * band_cap + 1) + " samples)");
  }
  inner_ = uniform_ring(RingSide::inner, r_inner, ring_size);
  outer_ = uniform_ring(RingSide::outer, r_outer, ring_size);
}

BoundaryFunction SpectralBackend::primary_trace(const BoundaryFunction& q_bar,
                                                const BoundaryFunction& omega) const {
  require_on_ring(q_bar, outer_, "spectral primary (Neumann data)");
  require_on_ring(omega, inner_, "spectral primary (Dirichlet data)");
  const SeriesField field =
      solve_series(analyze(q_bar, band_cap_), analyze(omega, band_cap_), r_inner_, r_outer_);
  return synthesize(field.trace_at(r_outer_), outer_);
}

BoundaryFunction SpectralBackend::adjoint_gradient(const BoundaryFunction& adjoint_data) const {
  require_on_ring(adjoint_data, outer_, "spectral adjoint (Neumann data)");
  FourierBoundary zero_inner;
  zero_inner.radius = r_inner_;
  const SeriesField field =
      solve_series(analyze(adjoint_data, band_cap_), zero_inner, r_inner_, r_outer_);
  return synthesize(-1.0 * field.inner_flux(), inner_);
}

double SpectralBackend::inner_product(const BoundaryFunction& f, const BoundaryFunction& g) const {
  require_same_ring(f, g, "spectral inner product");
  const FourierBoundary a = analyze(f, band_cap_);
  const FourierBoundary b = analyze(g, band_cap_);
  double sum = 0.0;
  for (const auto& [j, c] : a.coefficients) sum += (c * std::conj(b.at(j))).real();
  return 2.0 * std::numbers::pi * f.radius * sum;
}

FunctionalEvaluation evaluate_functional(const Backend& backend, const BoundaryFunction& omega,
                                         const CauchyData& data, SolveCounters* counters,
                                         bool line_search) {
  FunctionalEvaluation eval;
  eval.trace = backend.primary_trace(data.q_bar, omega);
  if (counters) ++(line_search ? counters->line_search : counters->primary);
  const BoundaryFunction misfit = axpy(eval.trace, -1.0, data.u_bar);
  eval.value = backend.misfit_functional(misfit);
  return eval;
}

BoundaryFunction gradient(const Backend& backend, const BoundaryFunction& trace,
                          const CauchyData& data, SolveCounters* counters) {
  const BoundaryFunction adjoint_data = scaled(axpy(trace, -1.0, data.u_bar), 2.0);
  BoundaryFunction g = backend.adjoint_gradient(adjoint_data);
  if (counters) ++counters->adjoint;
  return g;
}

void StopRule::validate() const {
  if (!(j_tol > 0.0)) throw InvalidArgument("stop rule: j_tol must be positive");
  if (!(grad_eps > 0.0)) throw InvalidArgument("stop rule: grad_eps must be positive");
  if (max_iters < 1) throw InvalidArgument("stop rule: max_iters must be >= 1");
}

const char* to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::converged_functional: return "converged_functional";
    case RunStatus::converged_gradient: return "converged_gradient";
    case RunStatus::max_iterations: return "max_iterations";
    case RunStatus::diverged: return "diverged";
  }
  return "unknown";
}

const char* to_string(StopCriterion criterion) noexcept {
  switch (criterion) {
    case StopCriterion::functional: return "functional";
    case StopCriterion::gradient: return "gradient";
    case StopCriterion::either: return "either";
  }
  return "unknown";
}

RunResult run(const Backend& backend, const CauchyData& data, const StepStrategy& strategy,
              const StopRule& stop, std::optional<BoundaryFunction> omega0) {
  data.validate();
  require_on_ring(data.u_bar, backend.ring(RingSide::outer), "run (Cauchy data)");
  validate(strategy);
  stop.validate();

  RunResult result;
  result.omega = omega0 ? std::move(*omega0) : backend.zero(RingSide::inner);
  require_on_ring(result.omega, backend.ring(RingSide::inner), "run (initial guess)");

  const bool use_functional = stop.criterion != StopCriterion::gradient;
  const bool use_gradient = stop.criterion != StopCriterion::functional;
  double previous = std::numeric_limits<double>::infinity();
  int increases = 0;

  for (int k = 0;; ++k) {
    const FunctionalEvaluation eval =
        evaluate_functional(backend, result.omega, data, &result.counters);
    result.final_functional = eval.value;

    if (use_functional && eval.value < stop.j_tol) {
      result.status = RunStatus::converged_functional;
      break;
    }
    if (!is_armijo(strategy)) {
      const bool counted = eval.value > previous && !is_prescribed_step(strategy, k - 1);
      increases = counted ? increases + 1 : 0;
      if (increases >= kDivergenceWindow) {
        result.status = RunStatus::diverged;
        result.diagnostic = "functional increased for " + std::to_string(kDivergenceWindow) +
                            " consecutive iterations (J = " + std::to_string(eval.value) +
                            " at k = " + std::to_string(k) + "); step sizes are too large";
        break;
      }
    }
    previous = eval.value;
    if (k >= stop.max_iters) {
      result.status = RunStatus::max_iterations;
      result.diagnostic = "reached max_iters = " + std::to_string(stop.max_iters);
      break;
    }

    const BoundaryFunction grad = gradient(backend, eval.trace, data, &result.counters);
    const double grad_norm_sq = backend.inner_product(grad, grad);
    const double grad_norm = std::sqrt(std::max(0.0, grad_norm_sq));
    if ((use_gradient && grad_norm < stop.grad_eps) || grad_norm_sq == 0.0) {
      result.status = RunStatus::converged_gradient;
      break;
    }

    StepContext ctx;
    ctx.k = k;
    ctx.functional = eval.value;
    ctx.grad_norm_sq = grad_norm_sq;
    ctx.r_inner = backend.r_inner();
    ctx.r_outer = backend.r_outer();
    ctx.band_cap = backend.band_cap();
    ctx.functional_at = [&](double rho) {
      return evaluate_functional(backend, axpy(result.omega, -rho, grad), data, &result.counters,
                                 true)
          .value;
    };
    const StepDecision step = choose_step(strategy, ctx);

    IterationRecord rec;
    rec.k = k;
    rec.functional = eval.value;
    rec.grad_norm = grad_norm;
    rec.rho = step.rho;
    rec.primary_solves = result.counters.primary;
    rec.adjoint_solves = result.counters.adjoint;
    rec.line_search_solves = result.counters.line_search;
    rec.accepted_value = step.accepted_value;
    result.history.push_back(rec);

    result.omega = axpy(result.omega, -step.rho, grad);
  }
  return result;
}

void write_history_csv(const std::vector<IterationRecord>& history, std::ostream& out) {
  out << "k,J,grad_norm,rho,primary_solves,adjoint_solves,line_search_solves\n";
  for (const auto& r : history) {
    out << r.k << ',' << detail::format_double(r.functional) << ','
        << detail::format_double(r.grad_norm) << ',' << detail::format_double(r.rho) << ','
        << r.primary_solves << ',' << r.adjoint_solves << ',' << r.line_search_solves << '\n';
  }
}

void write_history_csv(const std::vector<IterationRecord>& history,
                       const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_history_csv(history, out);
}

}  // namespace acy
