#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace acy {

inline constexpr int kDefaultBandCap = 64;

// Backtracking on beta_m = tau^m starting from beta_0 = 1.
struct Armijo {
  double xi = 1.0 / 3.0;
  double tau = 0.5;
  int max_halvings = 60;
};

struct Constant {
  double rho = 1.0 / 3.0;
};

// rho = 2 / (C_M + C_N) at every iteration.
struct OptimalTwoMode {
  int low = 0;
  int high = 0;
};

enum class SweepDirection { ascending, descending };

// rho_k = 1/C_{M+k} or 1/C_{N-k} for k <= N - M, then tail_rho. An unset
// tail selects default_tail_rho().
struct ModeSweep {
  int low = 0;
  int high = 0;
  SweepDirection direction = SweepDirection::descending;
  std::optional<double> tail_rho;
};

struct ExplicitSchedule {
  std::vector<double> rhos;
  double tail_rho = 1.0 / 3.0;
};

using StepStrategy = std::variant<Armijo, Constant, OptimalTwoMode, ModeSweep, ExplicitSchedule>;

// Throws InvalidArgument when parameters fall outside their admissible ranges
// (0 < xi < 1/2, 0 < tau < 1, rho > 0, 0 <= M <= N).
void validate(const StepStrategy& strategy);

// Short stable label, e.g. "armijo", "constant", "sweep-descending".
std::string label(const StepStrategy& strategy);

bool is_armijo(const StepStrategy& strategy) noexcept;

// True when step k comes from the finite prescribed part of a sweep or an
// explicit schedule rather than from a steady rule. Such steps may raise J on
// purpose (a sweep amplifies low modes before annihilating them).
bool is_prescribed_step(const StepStrategy& strategy, int k) noexcept;

struct ArmijoResult {
  double rho = 0.0;
  int evaluations = 0;
  double accepted_value = 0.0;  // J(omega_k - rho J'(omega_k))
};

// Returns the first beta_m = tau^m with
//   functional_at(beta_m) <= j_k - xi * beta_m * grad_norm_sq.
// Each candidate costs one call. Throws NumericalError ("step underflow")
// when m exceeds max_halvings.
ArmijoResult armijo_step(const std::function<double(double)>& functional_at, double j_k,
                         double grad_norm_sq, double xi, double tau, int max_halvings = 60);

struct OptimalStep {
  double rho = 0.0;
  double delta = 0.0;
};

// rho_opt = 2 / (C_M + C_N), delta_opt = (C_M - C_N) / (C_M + C_N).
OptimalStep optimal_step(int low, int high, double r_inner, double r_outer);

double sweep_step(int k, int low, int high, SweepDirection direction, double r_inner,
                  double r_outer, double tail_rho);

// 2 / (C_0 + C_cap); approximately Rid/Rd for a large cap.
double default_tail_rho(double r_inner, double r_outer, int band_cap = kDefaultBandCap);

struct StepContext {
  int k = 0;
  double functional = 0.0;
  double grad_norm_sq = 0.0;
  double r_inner = 1.0;
  double r_outer = 3.0;
  int band_cap = kDefaultBandCap;
  // Functional at omega_k - rho J'(omega_k); one primary solve per call.
  std::function<double(double)> functional_at;
};

struct StepDecision {
  double rho = 0.0;
  int evaluations = 0;
  std::optional<double> accepted_value;
};

StepDecision choose_step(const StepStrategy& strategy, const StepContext& context);

}  // namespace acy
