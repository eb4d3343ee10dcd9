#pragma once

#include <complex>
#include <map>

namespace acy {

enum class Trig { cos, sin };

// Finite trigonometric series f(theta) = sum_j a_j exp(i j theta) on a circle
// of the given radius. Real functions carry Hermitian coefficients.
struct FourierBoundary {
  double radius = 1.0;
  std::map<int, std::complex<double>> coefficients;

  std::complex<double> at(int j) const;

  // Adds amplitude * cos(m theta) or amplitude * sin(m theta), m >= 0.
  FourierBoundary& add_real_term(double amplitude, int mode, Trig kind);

  // Replaces a_j and a_-j by their Hermitian-symmetric average.
  FourierBoundary& make_hermitian();

  int max_mode() const noexcept;
  bool empty() const noexcept { return coefficients.empty(); }

  double evaluate(double theta) const;
  // L2 norm on the circle (Parseval): sqrt(2 pi R sum |a_j|^2).
  double l2_norm() const;
};

FourierBoundary operator+(const FourierBoundary& a, const FourierBoundary& b);
FourierBoundary operator-(const FourierBoundary& a, const FourierBoundary& b);
FourierBoundary operator*(double s, const FourierBoundary& a);

// Coefficient of e_k on the outer circle produced by a unit inner-circle
// Dirichlet mode j with homogeneous outer Neumann data:
//   2 Rd^|j| Rid^|j| / (Rd^2|j| + Rid^2|j|).
double trace_factor(int j, double r_inner, double r_outer);

// Per-mode gradient multiplier
//   C_j = 8 Rd^(2|j|+1) Rid^(2|j|-1) / (Rid^2|j| + Rd^2|j|)^2.
double c_factor(int j, double r_inner, double r_outer);

// J'(omega) coefficients for error mu = omega* - omega: a_j -> -C_j a_j.
FourierBoundary gradient_coefficients(const FourierBoundary& mu, double r_inner, double r_outer);

struct ModeState {
  FourierBoundary mu;
  int k = 0;
};

// a_j^(k+1) = (1 - C_j rho) a_j^(k) for every mode.
ModeState step_modes(const ModeState& state, double rho, double r_inner, double r_outer);

// max(|1 - C_M rho|, |1 - C_N rho|), 0 <= M <= N.
double compression_factor(int m_low, int m_high, double rho, double r_inner, double r_outer);

// J = 2 pi Rd sum_j |trace_factor(j) a_j|^2 for error mu.
double functional_value(const FourierBoundary& mu, double r_inner, double r_outer);

// Exact harmonic solution of the mixed problem for band-limited data:
//   dv/dr = q on r = Rd,  v = w on r = Rid.
// Mode j >= 1 is stored as A (r/Rd)^|j| + B (Rid/r)^|j|, mode 0 as
// A + B ln(r/Rid).
class SeriesField {
public:
  struct Mode {
    std::complex<double> a;
    std::complex<double> b;
  };

  SeriesField(double r_inner, double r_outer) : r_inner_(r_inner), r_outer_(r_outer) {}

  double r_inner() const noexcept { return r_inner_; }
  double r_outer() const noexcept { return r_outer_; }
  const std::map<int, Mode>& modes() const noexcept { return modes_; }
  void set_mode(int j, Mode m) { modes_[j] = m; }

  std::complex<double> mode_value(int j, double r) const;
  std::complex<double> mode_radial_derivative(int j, double r) const;

  double value(double r, double theta) const;
  double radial_derivative(double r, double theta) const;

  // Restriction to r = radius as a Fourier series on that circle.
  FourierBoundary trace_at(double radius) const;
  // Outward normal derivative: +d/dr on the outer circle, -d/dr on the inner.
  FourierBoundary outer_flux() const;
  FourierBoundary inner_flux() const;

private:
  double r_inner_;
  double r_outer_;
  std::map<int, Mode> modes_;
};

SeriesField solve_series(const FourierBoundary& q_outer, const FourierBoundary& w_inner,
                         double r_inner, double r_outer);

}  // namespace acy
