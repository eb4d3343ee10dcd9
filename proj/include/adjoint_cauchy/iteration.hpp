#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adjoint_cauchy/boundary.hpp"
#include "adjoint_cauchy/fem.hpp"
#include "adjoint_cauchy/geometry.hpp"
#include "adjoint_cauchy/step_size.hpp"

namespace acy {

// Cauchy data on the outer circle: potential u_bar and normal flux q_bar.
struct CauchyData {
  BoundaryFunction u_bar;
  BoundaryFunction q_bar;

  void validate() const;
};

// Solver for the two direct problems of the method. Implementations hold
// no mutable state, so one backend may serve concurrent runs.
class Backend {
public:
  virtual ~Backend() = default;

  virtual std::string name() const = 0;
  virtual double r_inner() const = 0;
  virtual double r_outer() const = 0;
  virtual const Ring& ring(RingSide side) const = 0;
  virtual int band_cap() const { return kDefaultBandCap; }

  // Outer trace of  -Lap v = 0,  dv/dn = q_bar on Gamma_d,  v = omega on Gamma_id.
  virtual BoundaryFunction primary_trace(const BoundaryFunction& q_bar,
                                         const BoundaryFunction& omega) const = 0;

  // First variation  J' = -dv^/dn on Gamma_id  where v^ solves the adjoint
  // problem with Neumann data `adjoint_data` = 2(v - u_bar) and v^ = 0 on Gamma_id.
  virtual BoundaryFunction adjoint_gradient(const BoundaryFunction& adjoint_data) const = 0;

  // L2 inner product on the ring both functions live on.
  virtual double inner_product(const BoundaryFunction& f, const BoundaryFunction& g) const = 0;

  // Quadrature of |misfit|^2 over the outer ring that defines J.
  virtual double misfit_functional(const BoundaryFunction& misfit) const {
    return inner_product(misfit, misfit);
  }

  BoundaryFunction zero(RingSide side) const;
  BoundaryFunction sample(RingSide side, const std::function<double(double)>& fn) const;
};

class FemBackend final : public Backend {
public:
  explicit FemBackend(const AnnulusSpec& spec, SolverOptions options = {});

  std::string name() const override { return "fem"; }
  double r_inner() const override { return solver_.mesh().spec().r_inner; }
  double r_outer() const override { return solver_.mesh().spec().r_outer; }
  const Ring& ring(RingSide side) const override { return solver_.mesh().ring(side); }

  BoundaryFunction primary_trace(const BoundaryFunction& q_bar,
                                 const BoundaryFunction& omega) const override;
  BoundaryFunction adjoint_gradient(const BoundaryFunction& adjoint_data) const override;
  double inner_product(const BoundaryFunction& f, const BoundaryFunction& g) const override;
  double misfit_functional(const BoundaryFunction& misfit) const override;

  const MixedBvpSolver& solver() const noexcept { return solver_; }
  const AnnulusMesh& mesh() const noexcept { return solver_.mesh(); }

private:
  MixedBvpSolver solver_;
};

// Exact series backend: ring samples are analyzed up to the band cap, the
// direct problems are solved mode by mode, and inner products use Parseval.
class SpectralBackend final : public Backend {
public:
  SpectralBackend(double r_inner, double r_outer, std::size_t ring_size,
                  int band_cap = kDefaultBandCap);

  std::string name() const override { return "spectral"; }
  double r_inner() const override { return r_inner_; }
  double r_outer() const override { return r_outer_; }
  const Ring& ring(RingSide side) const override {
    return side == RingSide::inner ? inner_ : outer_;
  }
  int band_cap() const override { return band_cap_; }

  BoundaryFunction primary_trace(const BoundaryFunction& q_bar,
                                 const BoundaryFunction& omega) const override;
  BoundaryFunction adjoint_gradient(const BoundaryFunction& adjoint_data) const override;
  double inner_product(const BoundaryFunction& f, const BoundaryFunction& g) const override;

private:
  double r_inner_;
  double r_outer_;
  int band_cap_;
  Ring inner_;
  Ring outer_;
};

struct SolveCounters {
  std::size_t primary = 0;
  std::size_t adjoint = 0;
  std::size_t line_search = 0;
};

struct FunctionalEvaluation {
  double value = 0.0;
  BoundaryFunction trace;  // v(omega) on Gamma_d
};

// J(omega) = int_{Gamma_d} |v(omega) - u_bar|^2. One primary solve, counted as
// main-path or line-search work.
FunctionalEvaluation evaluate_functional(const Backend& backend, const BoundaryFunction& omega,
                                         const CauchyData& data, SolveCounters* counters = nullptr,
                                         bool line_search = false);

// J'(omega) from the trace of a matching evaluate_functional call; one adjoint solve.
BoundaryFunction gradient(const Backend& backend, const BoundaryFunction& trace,
                          const CauchyData& data, SolveCounters* counters = nullptr);

struct IterationRecord {
  int k = 0;
  double functional = 0.0;
  double grad_norm = 0.0;
  double rho = 0.0;
  std::size_t primary_solves = 0;
  std::size_t adjoint_solves = 0;
  std::size_t line_search_solves = 0;
  // Armijo only: J at the accepted candidate.
  std::optional<double> accepted_value;
};

enum class StopCriterion { functional, gradient, either };

struct StopRule {
  double j_tol = 1e-5;
  double grad_eps = 1e-10;
  int max_iters = 500;
  StopCriterion criterion = StopCriterion::functional;

  void validate() const;
};

enum class RunStatus { converged_functional, converged_gradient, max_iterations, diverged };

const char* to_string(RunStatus status) noexcept;
const char* to_string(StopCriterion criterion) noexcept;

struct RunResult {
  std::vector<IterationRecord> history;
  BoundaryFunction omega;
  double final_functional = 0.0;
  SolveCounters counters;
  RunStatus status = RunStatus::max_iterations;
  std::string diagnostic;

  bool converged() const noexcept {
    return status == RunStatus::converged_functional || status == RunStatus::converged_gradient;
  }
  int iterations() const noexcept { return static_cast<int>(history.size()); }
  // Two direct solves per completed update plus line-search solves.
  std::size_t iteration_solves() const noexcept {
    return 2 * history.size() + counters.line_search;
  }
};

// Consecutive increases of J that abort a run under a non-Armijo strategy.
inline constexpr int kDivergenceWindow = 5;

// Steepest descent  omega_{k+1} = omega_k - rho_k J'(omega_k). omega0 defaults to 0.
RunResult run(const Backend& backend, const CauchyData& data, const StepStrategy& strategy,
              const StopRule& stop, std::optional<BoundaryFunction> omega0 = std::nullopt);

// Columns k,J,grad_norm,rho,primary_solves,adjoint_solves,line_search_solves.
void write_history_csv(const std::vector<IterationRecord>& history, std::ostream& out);
void write_history_csv(const std::vector<IterationRecord>& history,
                       const std::filesystem::path& path);

}  // namespace acy
