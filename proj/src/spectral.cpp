#include "adjoint_cauchy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "adjoint_cauchy/errors.hpp"

namespace acy {

namespace {

void require_radii(double r_inner, double r_outer) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
    throw InvalidArgument("radii must satisfy 0 < r_inner < r_outer");
  }
}

using Complex = std::complex<double>;

}  // namespace

Complex FourierBoundary::at(int j) const {
  const auto it = coefficients.find(j);
  return it == coefficients.end() ? Complex{} : it->second;
}

FourierBoundary& FourierBoundary::add_real_term(double amplitude, int mode, Trig kind) {
  if (mode < 0) throw InvalidArgument("trigonometric term needs a non-negative mode");
  if (mode == 0) {
    if (kind == Trig::cos) coefficients[0] += amplitude;
    return *this;
  }
  if (kind == Trig::cos) {
    coefficients[mode] += 0.5 * amplitude;
    coefficients[-mode] += 0.5 * amplitude;
  } else {
    coefficients[mode] += Complex(0.0, -0.5 * amplitude);
    coefficients[-mode] += Complex(0.0, 0.5 * amplitude);
  }
  return *this;
}

FourierBoundary& FourierBoundary::make_hermitian() {
  std::map<int, Complex> sym;
  for (const auto& [j, a] : coefficients) {
    const Complex avg = 0.5 * (a + std::conj(at(-j)));
    sym[j] = avg;
    sym[-j] = std::conj(avg);
  }
  coefficients = std::move(sym);
  return *this;
}

int FourierBoundary::max_mode() const noexcept {
  int m = 0;
  for (const auto& [j, a] : coefficients) m = std::max(m, std::abs(j));
  return m;
}

double FourierBoundary::evaluate(double theta) const {
  Complex sum{};
  for (const auto& [j, a] : coefficients) sum += a * std::polar(1.0, j * theta);
  return sum.real();
}

double FourierBoundary::l2_norm() const {
  double s = 0.0;
  for (const auto& [j, a] : coefficients) s += std::norm(a);
  return std::sqrt(2.0 * std::numbers::pi * radius * s);
}

FourierBoundary operator+(const FourierBoundary& a, const FourierBoundary& b) {
  FourierBoundary out = a;
  for (const auto& [j, c] : b.coefficients) out.coefficients[j] += c;
  return out;
}

FourierBoundary operator-(const FourierBoundary& a, const FourierBoundary& b) {
  FourierBoundary out = a;
  for (const auto& [j, c] : b.coefficients) out.coefficients[j] -= c;
  return out;
}

FourierBoundary operator*(double s, const FourierBoundary& a) {
  FourierBoundary out = a;
  for (auto& [j, c] : out.coefficients) c *= s;
  return out;
}

// Both factors are evaluated in the ratio rho = Rid/Rd, which is
// algebraically identical and avoids overflow of Rd^(2|j|) for large modes.
double trace_factor(int j, double r_inner, double r_outer) {
  require_radii(r_inner, r_outer);
  const double p = std::pow(r_inner / r_outer, std::abs(j));
  return 2.0 * p / (1.0 + p * p);
}

double c_factor(int j, double r_inner, double r_outer) {
  require_radii(r_inner, r_outer);
  const double ratio = r_inner / r_outer;
  const double p2 = std::pow(ratio, 2 * std::abs(j));
  return 8.0 * p2 / (ratio * (1.0 + p2) * (1.0 + p2));
}

FourierBoundary gradient_coefficients(const FourierBoundary& mu, double r_inner, double r_outer) {
  FourierBoundary g;
  g.radius = r_inner;
  for (const auto& [j, a] : mu.coefficients) g.coefficients[j] = -c_factor(j, r_inner, r_outer) * a;
  return g;
}

ModeState step_modes(const ModeState& state, double rho, double r_inner, double r_outer) {
  if (!std::isfinite(rho)) throw InvalidArgument("step_modes: step size must be finite");
  ModeState next{state.mu, state.k + 1};
  for (auto& [j, a] : next.mu.coefficients) a *= 1.0 - c_factor(j, r_inner, r_outer) * rho;
  return next;
}

double compression_factor(int m_low, int m_high, double rho, double r_inner, double r_outer) {
  if (m_low < 0 || m_high < m_low) {
    throw InvalidArgument("compression_factor requires 0 <= M <= N");
  }
  return std::max(std::abs(1.0 - c_factor(m_low, r_inner, r_outer) * rho),
                  std::abs(1.0 - c_factor(m_high, r_inner, r_outer) * rho));
}

double functional_value(const FourierBoundary& mu, double r_inner, double r_outer) {
  double s = 0.0;
  for (const auto& [j, a] : mu.coefficients) s += std::norm(trace_factor(j, r_inner, r_outer) * a);
  return 2.0 * std::numbers::pi * r_outer * s;
}

Complex SeriesField::mode_value(int j, double r) const {
  const auto it = modes_.find(j);
  if (it == modes_.end()) return {};
  const auto& [a, b] = it->second;
  if (j == 0) return a + b * std::log(r / r_inner_);
  const int m = std::abs(j);
  return a * std::pow(r / r_outer_, m) + b * std::pow(r_inner_ / r, m);
}

Complex SeriesField::mode_radial_derivative(int j, double r) const {
  const auto it = modes_.find(j);
  if (it == modes_.end()) return {};
  const auto& [a, b] = it->second;
  if (j == 0) return b / r;
  const int m = std::abs(j);
  return (static_cast<double>(m) / r) * (a * std::pow(r / r_outer_, m) - b * std::pow(r_inner_ / r, m));
}

double SeriesField::value(double r, double theta) const {
  Complex sum{};
  for (const auto& [j, mode] : modes_) sum += mode_value(j, r) * std::polar(1.0, j * theta);
  return sum.real();
}

double SeriesField::radial_derivative(double r, double theta) const {
  Complex sum{};
  for (const auto& [j, mode] : modes_) {
    sum += mode_radial_derivative(j, r) * std::polar(1.0, j * theta);
  }
  return sum.real();
}

FourierBoundary SeriesField::trace_at(double radius) const {
  FourierBoundary f;
  f.radius = radius;
  for (const auto& [j, mode] : modes_) f.coefficients[j] = mode_value(j, radius);
  return f;
}

FourierBoundary SeriesField::outer_flux() const {
  FourierBoundary f;
  f.radius = r_outer_;
  for (const auto& [j, mode] : modes_) f.coefficients[j] = mode_radial_derivative(j, r_outer_);
  return f;
}

FourierBoundary SeriesField::inner_flux() const {
  FourierBoundary f;
  f.radius = r_inner_;
  for (const auto& [j, mode] : modes_) f.coefficients[j] = -mode_radial_derivative(j, r_inner_);
  return f;
}

SeriesField solve_series(const FourierBoundary& q_outer, const FourierBoundary& w_inner,
                         double r_inner, double r_outer) {
  require_radii(r_inner, r_outer);
  SeriesField field(r_inner, r_outer);
  std::map<int, bool> active;
  for (const auto& [j, c] : q_outer.coefficients) active[j] = true;
  for (const auto& [j, d] : w_inner.coefficients) active[j] = true;

  const double ratio = r_inner / r_outer;
  for (const auto& [j, unused] : active) {
    const Complex c = q_outer.at(j);
    const Complex d = w_inner.at(j);
    if (j == 0) {
      field.set_mode(0, {d, c * r_outer});
      continue;
    }
    const int m = std::abs(j);
    const double pm = std::pow(ratio, m);
    const Complex a = (c * (r_outer / m) + d * pm) / (1.0 + pm * pm);
    field.set_mode(j, {a, d - a * pm});
  }
  return field;
}

}  // namespace acy
