// Experiment harness for the adjoint-method Cauchy solver. Talks to the
// library exclusively through the C interface.

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "adjoint_cauchy/adjoint_cauchy.h"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kOracleBreach = 3 };

int exit_for(acy_status status) {
  switch (status) {
    case ACY_OK: return kOk;
    case ACY_ERR_NUMERICAL: return kNumerical;
    default: return kUsage;
  }
}

int report_failure(acy_status status, const char* what) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what, acy_last_error(), acy_status_string(status));
  return exit_for(status);
}

struct ExperimentDeleter {
  void operator()(acy_experiment* e) const { acy_experiment_free(e); }
};
struct RunDeleter {
  void operator()(acy_run* r) const { acy_run_free(r); }
};
struct ComparisonDeleter {
  void operator()(acy_comparison* c) const { acy_comparison_free(c); }
};
struct OracleDeleter {
  void operator()(acy_oracle_report* r) const { acy_oracle_report_free(r); }
};
struct MeshDeleter {
  void operator()(acy_mesh* m) const { acy_mesh_free(m); }
};

using ExperimentPtr = std::unique_ptr<acy_experiment, ExperimentDeleter>;

struct Overrides {
  std::string backend;
  std::string strategy;
  std::string j_tol;
  std::string mesh;
  std::string output;
  std::string max_iters;
  std::string criterion;
};

void add_overrides(CLI::App* cmd, Overrides& o, bool stepping) {
  cmd->add_option("--backend", o.backend, "fem or spectral");
  cmd->add_option("--mesh", o.mesh, "mesh resolution as <n_radial>x<n_angular>");
  cmd->add_option("--output", o.output, "output path prefix");
  if (stepping) {
    cmd->add_option("--strategy", o.strategy,
                    "step rule, e.g. armijo, constant:rho=1/3, sweep:M=0,N=2");
    cmd->add_option("--j-tol", o.j_tol, "stop when J < j_tol");
    cmd->add_option("--max-iters", o.max_iters, "iteration cap");
    cmd->add_option("--criterion", o.criterion, "functional, gradient or either");
  }
}

int load(const std::string& path, const Overrides& o, ExperimentPtr& out) {
  acy_experiment* raw = nullptr;
  if (const acy_status st = acy_experiment_load_file(path.c_str(), &raw); st != ACY_OK) {
    return report_failure(st, "loading config");
  }
  out.reset(raw);
  const std::map<std::string, std::string> pairs{
      {"backend", o.backend},     {"strategy", o.strategy}, {"j_tol", o.j_tol},
      {"mesh", o.mesh},           {"output", o.output},     {"max_iters", o.max_iters},
      {"criterion", o.criterion},
  };
  for (const auto& [key, value] : pairs) {
    if (value.empty()) continue;
    if (const acy_status st = acy_experiment_override(out.get(), key.c_str(), value.c_str());
        st != ACY_OK) {
      return report_failure(st, ("override --" + key).c_str());
    }
  }
  return kOk;
}

void print_summary(const acy_run* run) {
  acy_run_summary s{};
  acy_run_get_summary(run, &s);
  std::printf("%-18s status=%s iterations=%d J=%.6e solves=%zu (line search %zu)", acy_run_label(run),
              acy_run_status(run), s.iterations, s.final_functional, s.total_direct_solves,
              s.line_search_solves);
  if (!std::isnan(s.omega_max_error)) std::printf(" max|omega-omega*|=%.3e", s.omega_max_error);
  std::printf("\n");
}

bool diverged(const acy_run* run) { return std::string(acy_run_status(run)) == "diverged"; }

int cmd_run(const std::string& config, const Overrides& o) {
  ExperimentPtr exp;
  if (const int rc = load(config, o, exp); rc != kOk) return rc;
  acy_run* raw = nullptr;
  if (const acy_status st = acy_run_experiment(exp.get(), &raw); st != ACY_OK) {
    return report_failure(st, "run");
  }
  std::unique_ptr<acy_run, RunDeleter> run(raw);
  if (const acy_status st = acy_run_write(run.get(), acy_experiment_output(exp.get())); st != ACY_OK) {
    return report_failure(st, "writing outputs");
  }
  print_summary(run.get());
  if (diverged(run.get())) {
    std::fprintf(stderr, "error: %s\n", acy_run_diagnostic(run.get()));
    return kNumerical;
  }
  return kOk;
}

int cmd_compare(const std::string& config, const Overrides& o) {
  ExperimentPtr exp;
  if (const int rc = load(config, o, exp); rc != kOk) return rc;
  acy_comparison* raw = nullptr;
  if (const acy_status st = acy_compare_experiment(exp.get(), &raw); st != ACY_OK) {
    return report_failure(st, "compare");
  }
  std::unique_ptr<acy_comparison, ComparisonDeleter> cmp(raw);
  if (const acy_status st = acy_comparison_write(cmp.get(), acy_experiment_output(exp.get()));
      st != ACY_OK) {
    return report_failure(st, "writing outputs");
  }
  int rc = kOk;
  for (size_t i = 0; i < acy_comparison_size(cmp.get()); ++i) {
    const acy_run* run = acy_comparison_run(cmp.get(), i);
    print_summary(run);
    if (diverged(run)) {
      std::fprintf(stderr, "error: %s: %s\n", acy_run_label(run), acy_run_diagnostic(run));
      rc = kNumerical;
    }
  }
  return rc;
}

int cmd_oracle_check(const std::string& config, const Overrides& o) {
  ExperimentPtr exp;
  if (const int rc = load(config, o, exp); rc != kOk) return rc;
  acy_oracle_report* raw = nullptr;
  if (const acy_status st = acy_oracle_check(exp.get(), &raw); st != ACY_OK) {
    return report_failure(st, "oracle-check");
  }
  std::unique_ptr<acy_oracle_report, OracleDeleter> report(raw);
  const bool refined = acy_oracle_report_refined(report.get()) != 0;
  std::printf("tolerance %.3g (relative L2)\n", acy_oracle_report_tolerance(report.get()));
  std::printf("mode  trace_err    flux_err     chained_flux  %s\n",
              refined ? "fine_trace   fine_flux    result" : "result");
  std::string failing;
  for (size_t i = 0; i < acy_oracle_report_size(report.get()); ++i) {
    acy_oracle_mode m{};
    acy_oracle_report_mode(report.get(), i, &m);
    const bool ok = m.trace_ok && m.flux_ok && m.shrink_ok;
    std::printf("%4d  %.5e  %.5e  %.5e  ", m.mode, m.trace_error, m.flux_error, m.chained_flux_error);
    if (refined) std::printf("%.5e  %.5e  ", m.fine_trace_error, m.fine_flux_error);
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    if (!ok) failing += (failing.empty() ? "" : ",") + std::to_string(m.mode);
  }
  if (!acy_oracle_report_passed(report.get())) {
    std::fprintf(stderr, "error: oracle tolerance breached for modes %s\n", failing.c_str());
    return kOracleBreach;
  }
  return kOk;
}

int cmd_mesh_info(const std::string& config, const Overrides& o, const std::string& dump) {
  ExperimentPtr exp;
  if (const int rc = load(config, o, exp); rc != kOk) return rc;
  acy_mesh* raw = nullptr;
  if (const acy_status st = acy_experiment_mesh(exp.get(), &raw); st != ACY_OK) {
    return report_failure(st, "mesh");
  }
  std::unique_ptr<acy_mesh, MeshDeleter> mesh(raw);
  std::printf("nodes       %zu\n", acy_mesh_node_count(mesh.get()));
  std::printf("triangles   %zu\n", acy_mesh_triangle_count(mesh.get()));
  std::printf("ring nodes  %zu (each of inner and outer)\n", acy_mesh_ring_size(mesh.get()));
  std::printf("area        %.10f\n", acy_mesh_area(mesh.get()));
  if (!dump.empty()) {
    if (const acy_status st = acy_mesh_write_csv(mesh.get(), dump.c_str()); st != ACY_OK) {
      return report_failure(st, "mesh dump");
    }
    std::printf("wrote %snodes.csv and %stris.csv\n", dump.c_str(), dump.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjoint-method solver for the Cauchy problem of the Laplace equation on an annulus"};
  app.require_subcommand(1);

  std::string config;
  Overrides overrides;
  std::string dump;

  auto* run = app.add_subcommand("run", "run one steepest-descent experiment");
  run->add_option("config", config, "experiment JSON")->required();
  add_overrides(run, overrides, true);

  auto* compare = app.add_subcommand("compare", "run every entry of \"strategies\" and tabulate J");
  compare->add_option("config", config, "experiment JSON")->required();
  add_overrides(compare, overrides, true);

  auto* oracle = app.add_subcommand("oracle-check", "compare single-mode FEM solves with the series oracle");
  oracle->add_option("config", config, "experiment JSON")->required();
  add_overrides(oracle, overrides, false);

  auto* info = app.add_subcommand("mesh-info", "print mesh statistics");
  info->add_option("config", config, "experiment JSON")->required();
  add_overrides(info, overrides, false);
  info->add_option("--dump", dump, "write <prefix>nodes.csv and <prefix>tris.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (run->parsed()) return cmd_run(config, overrides);
  if (compare->parsed()) return cmd_compare(config, overrides);
  if (oracle->parsed()) return cmd_oracle_check(config, overrides);
  return cmd_mesh_info(config, overrides, dump);
}
