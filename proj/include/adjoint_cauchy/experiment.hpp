#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adjoint_cauchy/fem.hpp"
#include "adjoint_cauchy/geometry.hpp"
#include "adjoint_cauchy/iteration.hpp"
#include "adjoint_cauchy/spectral.hpp"
#include "adjoint_cauchy/step_size.hpp"

namespace acy {

enum class BackendKind { fem, spectral };

const char* to_string(BackendKind kind) noexcept;

struct TrigTerm {
  double amplitude = 0.0;
  int mode = 0;
  Trig kind = Trig::cos;
};

// amplitude * R(r) * trig(mode theta) with R = r^m (positive) or r^-m
// (negative); for mode 0 the pair is {1, ln r}.
struct HarmonicTerm {
  double amplitude = 0.0;
  int mode = 0;
  Trig kind = Trig::cos;
  bool positive = true;
};

struct DataSpec {
  std::string name = "example1";  // "example1", "example2", "harmonic" or "explicit"
  std::vector<HarmonicTerm> harmonic;
  std::vector<TrigTerm> u_bar;
  std::vector<TrigTerm> q_bar;
  std::optional<std::vector<TrigTerm>> omega_exact;
};

struct OracleCheckConfig {
  std::vector<int> modes{0, 1, 2, 3};
  double tolerance = 0.01;
  bool refine = true;
  double min_shrink = 3.0;
};

struct ExperimentConfig {
  AnnulusSpec mesh;
  BackendKind backend = BackendKind::fem;
  int band_cap = kDefaultBandCap;
  SolverOptions solver;
  DataSpec data;
  std::optional<std::vector<TrigTerm>> initial_guess;
  StepStrategy strategy = Armijo{};
  std::vector<StepStrategy> strategies;
  StopRule stop;
  std::string output = "out/";
  OracleCheckConfig oracle;

  void validate() const;
};

// Parses a JSON document; unknown keys and malformed values throw ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Applies one CLI-style override. Keys: backend, strategy, j_tol, mesh
// ("<n_radial>x<n_angular>"), output, max_iters, criterion.
void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value);

// "armijo", "constant:rho=1/3", "sweep:M=0,N=2,direction=descending",
// "schedule:rho=1681/486|1/3,tail_rho=1/3", or a JSON object.
StepStrategy parse_strategy(const std::string& text);

// Accepts decimal literals and exact ratios such as "1681/486".
double parse_number(const std::string& text);

// Resolved boundary data for a configuration.
struct ProblemData {
  std::vector<TrigTerm> u_bar;
  std::vector<TrigTerm> q_bar;
  std::optional<std::vector<TrigTerm>> omega_exact;
};

ProblemData resolve_data(const DataSpec& spec, double r_inner, double r_outer);
double evaluate_terms(const std::vector<TrigTerm>& terms, double theta);

std::unique_ptr<Backend> make_backend(const ExperimentConfig& config);
CauchyData make_cauchy_data(const Backend& backend, const ProblemData& data);

struct ExperimentRun {
  std::string label;
  RunResult result;
  double wall_seconds = 0.0;
  std::optional<BoundaryFunction> omega_exact;
};

ExperimentRun run_experiment(const ExperimentConfig& config);
ExperimentRun run_experiment(const ExperimentConfig& config, const Backend& backend,
                             const StepStrategy& strategy);

// history.csv, omega_final.csv and summary.json under the prefix.
void write_run_outputs(const ExperimentConfig& config, const ExperimentRun& run,
                       const std::filesystem::path& prefix);
std::string summary_json(const ExperimentConfig& config, const ExperimentRun& run);

struct CompareResult {
  std::vector<ExperimentRun> runs;
};

// Needs at least two strategies; runs them concurrently on one shared backend.
CompareResult run_compare(const ExperimentConfig& config);
// One sub-prefix per strategy plus <prefix>compare.csv (k, J per strategy).
void write_compare_outputs(const ExperimentConfig& config, const CompareResult& result,
                           const std::filesystem::path& prefix);

struct MeshInfo {
  std::size_t nodes = 0;
  std::size_t triangles = 0;
  std::size_t ring_nodes = 0;
  double area = 0.0;
  double exact_area = 0.0;
  double min_triangle_area = 0.0;
};

MeshInfo mesh_info(const AnnulusSpec& spec);

}  // namespace acy
