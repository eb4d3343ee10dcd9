#include "adjoint_cauchy/adjoint_cauchy.h"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/experiment.hpp"
#include "adjoint_cauchy/fem.hpp"
#include "adjoint_cauchy/oracle_check.hpp"
#include "adjoint_cauchy/spectral.hpp"
#include "adjoint_cauchy/step_size.hpp"

struct acy_mesh {
  std::shared_ptr<const acy::AnnulusMesh> mesh;
  std::unique_ptr<acy::MixedBvpSolver> solver;
};

struct acy_experiment {
  acy::ExperimentConfig config;
};

struct acy_run {
  acy::ExperimentConfig config;
  acy::ExperimentRun run;
  std::string status;
};

struct acy_comparison {
  acy::ExperimentConfig config;
  acy::CompareResult result;
  std::vector<acy_run> runs;
};

struct acy_oracle_report {
  acy::OracleReport report;
};

namespace {

thread_local std::string last_error;

acy_status fail(acy_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
acy_status guarded(F&& body) {
  try {
    body();
    return ACY_OK;
  } catch (const acy::ConfigError& e) {
    return fail(ACY_ERR_CONFIG, e.what());
  } catch (const acy::InvalidArgument& e) {
    return fail(ACY_ERR_INVALID_ARGUMENT, e.what());
  } catch (const acy::NumericalError& e) {
    return fail(ACY_ERR_NUMERICAL, e.what());
  } catch (const acy::IoError& e) {
    return fail(ACY_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ACY_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ACY_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ACY_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw acy::InvalidArgument(message);
}

acy::BoundaryFunction ring_function(const acy::Ring& ring, const double* values, size_t n) {
  require(values != nullptr, "null ring array");
  require(n == ring.size(), "ring array size does not match the mesh ring");
  return {ring.side, ring.radius, std::vector<double>(values, values + n)};
}

acy::ScalarField field_vector(const acy_mesh* mesh, const double* field, size_t n) {
  require(field != nullptr, "null field array");
  require(n == mesh->mesh->node_count(), "field size does not match the mesh node count");
  return Eigen::Map<const Eigen::VectorXd>(field, static_cast<Eigen::Index>(n));
}

const acy::MixedBvpSolver& solver_of(const acy_mesh* mesh) { return *mesh->solver; }

acy_mesh* new_mesh(const acy::AnnulusSpec& spec) {
  auto m = std::make_unique<acy_mesh>();
  m->mesh = std::make_shared<const acy::AnnulusMesh>(acy::generate_mesh(spec));
  m->solver = std::make_unique<acy::MixedBvpSolver>(m->mesh);
  return m.release();
}

acy_run make_run(const acy::ExperimentConfig& config, acy::ExperimentRun run) {
  acy_run out{config, std::move(run), {}};
  out.status = acy::to_string(out.run.result.status);
  return out;
}

}  // namespace

extern "C" {

const char* acy_version(void) { return "1.0.0"; }

const char* acy_status_string(acy_status status) {
  switch (status) {
    case ACY_OK: return "ok";
    case ACY_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ACY_ERR_CONFIG: return "configuration error";
    case ACY_ERR_NUMERICAL: return "numerical failure";
    case ACY_ERR_IO: return "i/o error";
    case ACY_ERR_OUT_OF_RANGE: return "index out of range";
    case ACY_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* acy_last_error(void) { return last_error.c_str(); }

acy_status acy_trace_factor(int mode, double r_inner, double r_outer, double* out) {
  return guarded([&] {
    require(out, "null output");
    *out = acy::trace_factor(mode, r_inner, r_outer);
  });
}

acy_status acy_c_factor(int mode, double r_inner, double r_outer, double* out) {
  return guarded([&] {
    require(out, "null output");
    *out = acy::c_factor(mode, r_inner, r_outer);
  });
}

acy_status acy_compression_factor(int low, int high, double rho, double r_inner, double r_outer,
                                  double* out) {
  return guarded([&] {
    require(out, "null output");
    *out = acy::compression_factor(low, high, rho, r_inner, r_outer);
  });
}

acy_status acy_optimal_step(int low, int high, double r_inner, double r_outer, double* rho,
                            double* delta) {
  return guarded([&] {
    require(rho && delta, "null output");
    const acy::OptimalStep s = acy::optimal_step(low, high, r_inner, r_outer);
    *rho = s.rho;
    *delta = s.delta;
  });
}

acy_status acy_sweep_step(int k, int low, int high, int descending, double r_inner,
                          double r_outer, double tail_rho, double* out) {
  return guarded([&] {
    require(out, "null output");
    *out = acy::sweep_step(k, low, high,
                           descending ? acy::SweepDirection::descending : acy::SweepDirection::ascending,
                           r_inner, r_outer, tail_rho);
  });
}

acy_status acy_mesh_create(double r_inner, double r_outer, int n_radial, int n_angular,
                           acy_mesh** out) {
  return guarded([&] {
    require(out, "null output");
    *out = nullptr;
    *out = new_mesh({r_inner, r_outer, n_radial, n_angular});
  });
}

void acy_mesh_free(acy_mesh* mesh) { delete mesh; }

size_t acy_mesh_node_count(const acy_mesh* mesh) { return mesh ? mesh->mesh->node_count() : 0; }

size_t acy_mesh_triangle_count(const acy_mesh* mesh) {
  return mesh ? mesh->mesh->triangle_count() : 0;
}

size_t acy_mesh_ring_size(const acy_mesh* mesh) {
  return mesh ? mesh->mesh->ring(acy::RingSide::inner).size() : 0;
}

double acy_mesh_area(const acy_mesh* mesh) {
  return mesh ? mesh->mesh->total_area() : std::numeric_limits<double>::quiet_NaN();
}

acy_status acy_mesh_write_csv(const acy_mesh* mesh, const char* prefix) {
  return guarded([&] {
    require(mesh && prefix, "null argument");
    acy::write_mesh_csv(*mesh->mesh, prefix);
  });
}

acy_status acy_mesh_solve(const acy_mesh* mesh, const double* q_outer, const double* w_inner,
                          size_t ring_size, double* field, size_t field_size) {
  return guarded([&] {
    require(mesh && field, "null argument");
    require(field_size == mesh->mesh->node_count(), "field size does not match the mesh node count");
    const auto& solver = solver_of(mesh);
    const auto q = ring_function(mesh->mesh->ring(acy::RingSide::outer), q_outer, ring_size);
    const auto w = ring_function(mesh->mesh->ring(acy::RingSide::inner), w_inner, ring_size);
    const acy::ScalarField v = solver.solve(q, w);
    std::copy(v.data(), v.data() + v.size(), field);
  });
}

acy_status acy_mesh_trace(const acy_mesh* mesh, const double* field, size_t field_size, int outer,
                          double* values, size_t ring_size) {
  return guarded([&] {
    require(mesh && values, "null argument");
    require(ring_size == mesh->mesh->ring(acy::RingSide::inner).size(), "ring size mismatch");
    const auto f = acy::trace(*mesh->mesh, field_vector(mesh, field, field_size),
                              outer ? acy::RingSide::outer : acy::RingSide::inner);
    std::copy(f.values.begin(), f.values.end(), values);
  });
}

acy_status acy_mesh_normal_flux(const acy_mesh* mesh, const double* field, size_t field_size,
                                int outer, double* values, size_t ring_size) {
  return guarded([&] {
    require(mesh && values, "null argument");
    require(ring_size == mesh->mesh->ring(acy::RingSide::inner).size(), "ring size mismatch");
    const auto f = solver_of(mesh).normal_flux(field_vector(mesh, field, field_size),
                                               outer ? acy::RingSide::outer : acy::RingSide::inner);
    std::copy(f.values.begin(), f.values.end(), values);
  });
}

acy_status acy_experiment_load_file(const char* path, acy_experiment** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    *out = new acy_experiment{acy::load_config(path)};
  });
}

acy_status acy_experiment_parse(const char* json, acy_experiment** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = nullptr;
    *out = new acy_experiment{acy::parse_config(json)};
  });
}

void acy_experiment_free(acy_experiment* experiment) { delete experiment; }

acy_status acy_experiment_override(acy_experiment* experiment, const char* key, const char* value) {
  return guarded([&] {
    require(experiment && key && value, "null argument");
    acy::ExperimentConfig updated = experiment->config;
    acy::apply_override(updated, key, value);
    experiment->config = std::move(updated);
  });
}

const char* acy_experiment_output(const acy_experiment* experiment) {
  return experiment ? experiment->config.output.c_str() : "";
}

acy_status acy_experiment_mesh(const acy_experiment* experiment, acy_mesh** out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    *out = nullptr;
    *out = new_mesh(experiment->config.mesh);
  });
}

acy_status acy_run_experiment(const acy_experiment* experiment, acy_run** out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    *out = nullptr;
    *out = new acy_run(make_run(experiment->config, acy::run_experiment(experiment->config)));
  });
}

void acy_run_free(acy_run* run) { delete run; }

acy_status acy_run_get_summary(const acy_run* run, acy_run_summary* out) {
  return guarded([&] {
    require(run && out, "null argument");
    const acy::RunResult& r = run->run.result;
    out->converged = r.converged() ? 1 : 0;
    out->iterations = r.iterations();
    out->final_functional = r.final_functional;
    out->primary_solves = r.counters.primary;
    out->adjoint_solves = r.counters.adjoint;
    out->line_search_solves = r.counters.line_search;
    out->total_direct_solves = r.iteration_solves();
    out->wall_seconds = run->run.wall_seconds;
    out->omega_max_error = std::numeric_limits<double>::quiet_NaN();
    if (run->run.omega_exact) {
      double err = 0.0;
      for (std::size_t k = 0; k < r.omega.size(); ++k) {
        err = std::max(err, std::abs(r.omega.values[k] - run->run.omega_exact->values[k]));
      }
      out->omega_max_error = err;
    }
  });
}

const char* acy_run_status(const acy_run* run) { return run ? run->status.c_str() : ""; }

const char* acy_run_label(const acy_run* run) { return run ? run->run.label.c_str() : ""; }

const char* acy_run_diagnostic(const acy_run* run) {
  return run ? run->run.result.diagnostic.c_str() : "";
}

size_t acy_run_history_size(const acy_run* run) { return run ? run->run.result.history.size() : 0; }

acy_status acy_run_history_record(const acy_run* run, size_t index, acy_iteration_record* out) {
  if (!run || !out) return fail(ACY_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= run->run.result.history.size()) {
    return fail(ACY_ERR_OUT_OF_RANGE, "history index " + std::to_string(index) + " out of range");
  }
  const acy::IterationRecord& r = run->run.result.history[index];
  *out = {r.k, r.functional, r.grad_norm, r.rho, r.primary_solves, r.adjoint_solves,
          r.line_search_solves};
  return ACY_OK;
}

size_t acy_run_omega_size(const acy_run* run) { return run ? run->run.result.omega.size() : 0; }

acy_status acy_run_omega(const acy_run* run, double* theta, double* omega, size_t capacity) {
  return guarded([&] {
    require(run && omega, "null argument");
    const acy::BoundaryFunction& w = run->run.result.omega;
    require(capacity >= w.size(), "output capacity too small");
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (theta) theta[k] = w.angle(k);
      omega[k] = w.values[k];
    }
  });
}

acy_status acy_run_write(const acy_run* run, const char* prefix) {
  return guarded([&] {
    require(run && prefix, "null argument");
    acy::write_run_outputs(run->config, run->run, prefix);
  });
}

acy_status acy_compare_experiment(const acy_experiment* experiment, acy_comparison** out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    *out = nullptr;
    auto cmp = std::make_unique<acy_comparison>();
    cmp->config = experiment->config;
    cmp->result = acy::run_compare(experiment->config);
    for (const auto& r : cmp->result.runs) cmp->runs.push_back(make_run(cmp->config, r));
    *out = cmp.release();
  });
}

void acy_comparison_free(acy_comparison* comparison) { delete comparison; }

size_t acy_comparison_size(const acy_comparison* comparison) {
  return comparison ? comparison->runs.size() : 0;
}

const acy_run* acy_comparison_run(const acy_comparison* comparison, size_t index) {
  if (!comparison || index >= comparison->runs.size()) return nullptr;
  return &comparison->runs[index];
}

acy_status acy_comparison_write(const acy_comparison* comparison, const char* prefix) {
  return guarded([&] {
    require(comparison && prefix, "null argument");
    acy::write_compare_outputs(comparison->config, comparison->result, prefix);
  });
}

acy_status acy_oracle_check(const acy_experiment* experiment, acy_oracle_report** out) {
  return guarded([&] {
    require(experiment && out, "null argument");
    *out = nullptr;
    const auto& cfg = experiment->config;
    *out = new acy_oracle_report{acy::oracle_check(cfg.mesh, cfg.oracle, cfg.solver)};
  });
}

void acy_oracle_report_free(acy_oracle_report* report) { delete report; }

size_t acy_oracle_report_size(const acy_oracle_report* report) {
  return report ? report->report.modes.size() : 0;
}

acy_status acy_oracle_report_mode(const acy_oracle_report* report, size_t index,
                                  acy_oracle_mode* out) {
  if (!report || !out) return fail(ACY_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.modes.size()) {
    return fail(ACY_ERR_OUT_OF_RANGE, "oracle mode index out of range");
  }
  const acy::OracleModeResult& m = report->report.modes[index];
  *out = {m.mode,        m.trace_error,     m.flux_error,      m.chained_flux_error,
          m.fine_trace_error, m.fine_flux_error, m.trace_ok ? 1 : 0, m.flux_ok ? 1 : 0,
          m.shrink_ok ? 1 : 0};
  return ACY_OK;
}

int acy_oracle_report_passed(const acy_oracle_report* report) {
  return report && report->report.passed() ? 1 : 0;
}

double acy_oracle_report_tolerance(const acy_oracle_report* report) {
  return report ? report->report.config.tolerance : std::numeric_limits<double>::quiet_NaN();
}

int acy_oracle_report_refined(const acy_oracle_report* report) {
  return report && report->report.config.refine ? 1 : 0;
}

}  // extern "C"
