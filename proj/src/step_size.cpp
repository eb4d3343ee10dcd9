#include "adjoint_cauchy/step_size.hpp"

#include <cmath>
#include <string>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/spectral.hpp"

namespace acy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_band(int low, int high, const char* what) {
  if (low < 0 || high < low) {
    throw InvalidArgument(std::string(what) + ": mode band must satisfy 0 <= M <= N (got M=" +
                          std::to_string(low) + ", N=" + std::to_string(high) + ")");
  }
}

void require_positive_rho(double rho, const char* what) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidArgument(std::string(what) + ": step sizes must be positive and finite");
  }
}

}  // namespace

void validate(const StepStrategy& strategy) {
  std::visit(overloaded{
                 [](const Armijo& a) {
                   if (!(a.xi > 0.0 && a.xi < 0.5)) {
                     throw InvalidArgument("armijo: xi must lie in (0, 1/2)");
                   }
                   if (!(a.tau > 0.0 && a.tau < 1.0)) {
                     throw InvalidArgument("armijo: tau must lie in (0, 1)");
                   }
                   if (a.max_halvings < 0) throw InvalidArgument("armijo: negative halving cap");
                 },
                 [](const Constant& c) { require_positive_rho(c.rho, "constant"); },
                 [](const OptimalTwoMode& o) { require_band(o.low, o.high, "optimal"); },
                 [](const ModeSweep& s) {
                   require_band(s.low, s.high, "sweep");
                   if (s.tail_rho) require_positive_rho(*s.tail_rho, "sweep");
                 },
                 [](const ExplicitSchedule& e) {
                   for (double rho : e.rhos) require_positive_rho(rho, "schedule");
                   require_positive_rho(e.tail_rho, "schedule");
                 },
             },
             strategy);
}

std::string label(const StepStrategy& strategy) {
  return std::visit(overloaded{
                        [](const Armijo&) -> std::string { return "armijo"; },
                        [](const Constant&) -> std::string { return "constant"; },
                        [](const OptimalTwoMode&) -> std::string { return "optimal"; },
                        [](const ModeSweep& s) -> std::string {
                          return s.direction == SweepDirection::ascending ? "sweep-ascending"
                                                                          : "sweep-descending";
                        },
                        [](const ExplicitSchedule&) -> std::string { return "schedule"; },
                    },
                    strategy);
}

bool is_armijo(const StepStrategy& strategy) noexcept {
  return std::holds_alternative<Armijo>(strategy);
}

ArmijoResult armijo_step(const std::function<double(double)>& functional_at, double j_k,
                         double grad_norm_sq, double xi, double tau, int max_halvings) {
  if (!(grad_norm_sq > 0.0)) throw InvalidArgument("armijo_step: gradient norm must be positive");
  double beta = 1.0;
  for (int m = 0; m <= max_halvings; ++m) {
    const double value = functional_at(beta);
    if (value <= j_k - xi * beta * grad_norm_sq) return {beta, m + 1, value};
    beta *= tau;
  }
  throw NumericalError("armijo: step underflow after " + std::to_string(max_halvings) +
                       " reductions");
}

OptimalStep optimal_step(int low, int high, double r_inner, double r_outer) {
  require_band(low, high, "optimal_step");
  const double cm = c_factor(low, r_inner, r_outer);
  const double cn = c_factor(high, r_inner, r_outer);
  return {2.0 / (cm + cn), (cm - cn) / (cm + cn)};
}

double sweep_step(int k, int low, int high, SweepDirection direction, double r_inner,
                  double r_outer, double tail_rho) {
  require_band(low, high, "sweep_step");
  if (k < 0) throw InvalidArgument("sweep_step: negative iteration index");
  if (k > high - low) return tail_rho;
  const int mode = direction == SweepDirection::ascending ? low + k : high - k;
  return 1.0 / c_factor(mode, r_inner, r_outer);
}

double default_tail_rho(double r_inner, double r_outer, int band_cap) {
  return 2.0 / (c_factor(0, r_inner, r_outer) + c_factor(band_cap, r_inner, r_outer));
}

bool is_prescribed_step(const StepStrategy& strategy, int k) noexcept {
  if (const auto* s = std::get_if<ModeSweep>(&strategy)) return k >= 0 && k <= s->high - s->low;
  if (const auto* e = std::get_if<ExplicitSchedule>(&strategy)) {
    return k >= 0 && static_cast<std::size_t>(k) < e->rhos.size();
  }
  return false;
}

StepDecision choose_step(const StepStrategy& strategy, const StepContext& ctx) {
  return std::visit(
      overloaded{
          [&](const Armijo& a) {
            const ArmijoResult r = armijo_step(ctx.functional_at, ctx.functional, ctx.grad_norm_sq,
                                               a.xi, a.tau, a.max_halvings);
            return StepDecision{r.rho, r.evaluations, r.accepted_value};
          },
          [&](const Constant& c) { return StepDecision{c.rho, 0, std::nullopt}; },
          [&](const OptimalTwoMode& o) {
            return StepDecision{optimal_step(o.low, o.high, ctx.r_inner, ctx.r_outer).rho, 0,
                                std::nullopt};
          },
          [&](const ModeSweep& s) {
            const double tail =
                s.tail_rho.value_or(default_tail_rho(ctx.r_inner, ctx.r_outer, ctx.band_cap));
            return StepDecision{
                sweep_step(ctx.k, s.low, s.high, s.direction, ctx.r_inner, ctx.r_outer, tail), 0,
                std::nullopt};
          },
          [&](const ExplicitSchedule& e) {
            const auto k = static_cast<std::size_t>(ctx.k);
            return StepDecision{k < e.rhos.size() ? e.rhos[k] : e.tail_rho, 0, std::nullopt};
          },
      },
      strategy);
}

}  // namespace acy
