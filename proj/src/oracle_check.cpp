#include "adjoint_cauchy/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/fourier.hpp"
#include "adjoint_cauchy/spectral.hpp"

namespace acy {

namespace {

double relative_error(const BoundaryFunction& approx, const BoundaryFunction& exact) {
  const double ref = boundary_norm(exact);
  const double diff = boundary_norm(axpy(approx, -1.0, exact));
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace

bool OracleReport::passed() const noexcept {
  return std::all_of(modes.begin(), modes.end(), [](const auto& m) { return m.passed(); });
}

OracleModeResult oracle_mode_errors(const MixedBvpSolver& solver, int mode) {
  const AnnulusMesh& mesh = solver.mesh();
  const Ring& inner = mesh.ring(RingSide::inner);
  const Ring& outer = mesh.ring(RingSide::outer);
  if (mode < 0 || mode > resolvable_mode(inner.size())) {
    throw InvalidArgument("oracle check: mode " + std::to_string(mode) +
                          " is outside the resolvable range of a " +
                          std::to_string(inner.size()) + "-point ring");
  }
  const double r_in = inner.radius;
  const double r_out = outer.radius;
  const double tf = trace_factor(mode, r_in, r_out);
  const double cj = c_factor(mode, r_in, r_out);
  const auto mode_fn = [mode](double scale) {
    return [mode, scale](double t) { return scale * std::cos(mode * t); };
  };

  OracleModeResult res;
  res.mode = mode;

  const BoundaryFunction zero_outer = BoundaryFunction::zeros(RingSide::outer, r_out, outer.size());
  const BoundaryFunction zero_inner = BoundaryFunction::zeros(RingSide::inner, r_in, inner.size());

  const ScalarField primary = solver.solve(zero_outer, BoundaryFunction::on_ring(inner, mode_fn(1.0)));
  const BoundaryFunction fem_trace = solver.trace(primary, RingSide::outer);
  res.trace_error = relative_error(fem_trace, BoundaryFunction::on_ring(outer, mode_fn(tf)));

  const BoundaryFunction exact_flux = BoundaryFunction::on_ring(inner, mode_fn(-cj));
  const ScalarField adjoint = solver.solve(BoundaryFunction::on_ring(outer, mode_fn(2.0 * tf)), zero_inner);
  res.flux_error = relative_error(solver.normal_flux(adjoint, RingSide::inner), exact_flux);

  const ScalarField chained = solver.solve(scaled(fem_trace, 2.0), zero_inner);
  res.chained_flux_error = relative_error(solver.normal_flux(chained, RingSide::inner), exact_flux);
  return res;
}

OracleReport oracle_check(const AnnulusSpec& spec, const OracleCheckConfig& config,
                          SolverOptions options) {
  if (config.modes.empty()) throw InvalidArgument("oracle check: empty mode list");
  if (!(config.tolerance > 0.0)) throw InvalidArgument("oracle check: tolerance must be positive");

  OracleReport report;
  report.spec = spec;
  report.config = config;

  const MixedBvpSolver coarse(generate_mesh(spec), options);
  std::optional<MixedBvpSolver> fine;
  if (config.refine) {
    AnnulusSpec doubled = spec;
    doubled.n_radial *= 2;
    doubled.n_angular *= 2;
    fine.emplace(generate_mesh(doubled), options);
  }

  for (int mode : config.modes) {
    OracleModeResult res = oracle_mode_errors(coarse, mode);
    res.trace_ok = res.trace_error <= config.tolerance;
    res.flux_ok = res.flux_error <= config.tolerance;
    if (fine) {
      const OracleModeResult f = oracle_mode_errors(*fine, mode);
      res.fine_trace_error = f.trace_error;
      res.fine_flux_error = f.flux_error;
      const auto shrinks = [&](double coarse_err, double fine_err) {
        return fine_err <= kOracleExactFloor || coarse_err >= config.min_shrink * fine_err;
      };
      res.shrink_ok = shrinks(res.trace_error, f.trace_error) && shrinks(res.flux_error, f.flux_error);
    }
    report.modes.push_back(res);
  }
  return report;
}

}  // namespace acy
