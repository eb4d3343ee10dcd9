#include "adjoint_cauchy/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "adjoint_cauchy/errors.hpp"

namespace acy {

namespace {

// exp(i 2 pi m / n) for m = 0..n-1; indexing by (j k mod n) keeps every
// twiddle at full accuracy.
std::vector<std::complex<double>> unit_roots(std::size_t n) {
  std::vector<std::complex<double>> roots(n);
  for (std::size_t m = 0; m < n; ++m) {
    roots[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  }
  return roots;
}

std::size_t wrap(long long value, std::size_t n) {
  const auto nn = static_cast<long long>(n);
  return static_cast<std::size_t>(((value % nn) + nn) % nn);
}

}  // namespace

int resolvable_mode(std::size_t n) noexcept { return n == 0 ? -1 : static_cast<int>((n - 1) / 2); }

FourierBoundary analyze(const BoundaryFunction& f, int max_mode) {
  const std::size_t n = f.size();
  if (n == 0) throw InvalidArgument("analyze: empty boundary function");
  const int limit = resolvable_mode(n);
  if (max_mode < 0) max_mode = limit;
  if (max_mode > limit) {
    throw InvalidArgument("analyze: " + std::to_string(n) + " samples cannot resolve mode " +
                          std::to_string(max_mode) + " (need at least " +
                          std::to_string(2 * max_mode + 1) + ")");
  }

  const auto roots = unit_roots(n);
  const double scale = max_abs(f);
  const double prune = 4.0 * std::numeric_limits<double>::epsilon() * scale;

  FourierBoundary out;
  out.radius = f.radius;
  for (int j = -max_mode; j <= max_mode; ++j) {
    std::complex<double> sum{};
    for (std::size_t k = 0; k < n; ++k) {
      sum += f.values[k] * std::conj(roots[wrap(static_cast<long long>(j) * static_cast<long long>(k), n)]);
    }
    sum /= static_cast<double>(n);
    if (std::abs(sum) > prune) out.coefficients[j] = sum;
  }
  out.make_hermitian();

  if (n % 2 == 0 && max_mode == limit) {
    double nyquist = 0.0;
    for (std::size_t k = 0; k < n; ++k) nyquist += (k % 2 == 0 ? 1.0 : -1.0) * f.values[k];
    nyquist /= static_cast<double>(n);
    if (std::abs(nyquist) > 1e-10 * std::max(scale, 1e-300)) {
      std::cerr << "warning: discarding Nyquist mode " << n / 2 << " (|a| = " << std::abs(nyquist)
                << ") while analyzing a " << n << "-point ring\n";
    }
  }
  return out;
}

BoundaryFunction synthesize(const FourierBoundary& c, RingSide side, std::size_t n) {
  if (n == 0) throw InvalidArgument("synthesize: empty ring");
  if (c.max_mode() > resolvable_mode(n)) {
    throw InvalidArgument("synthesize: mode " + std::to_string(c.max_mode()) +
                          " exceeds the Nyquist limit of a " + std::to_string(n) + "-point ring");
  }
  const auto roots = unit_roots(n);
  BoundaryFunction f = BoundaryFunction::zeros(side, c.radius, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> sum{};
    for (const auto& [j, a] : c.coefficients) {
      sum += a * roots[wrap(static_cast<long long>(j) * static_cast<long long>(k), n)];
    }
    f.values[k] = sum.real();
  }
  return f;
}

BoundaryFunction synthesize(const FourierBoundary& c, const Ring& ring) {
  FourierBoundary on_ring = c;
  on_ring.radius = ring.radius;
  return synthesize(on_ring, ring.side, ring.size());
}

std::optional<Band> detect_band(const FourierBoundary& c, double threshold) {
  double peak = 0.0;
  for (const auto& [j, a] : c.coefficients) peak = std::max(peak, std::abs(a));
  if (!(peak > 0.0)) return std::nullopt;
  std::optional<Band> band;
  for (const auto& [j, a] : c.coefficients) {
    if (std::abs(a) <= threshold * peak) continue;
    const int m = std::abs(j);
    if (!band) {
      band = Band{m, m};
    } else {
      band->low = std::min(band->low, m);
      band->high = std::max(band->high, m);
    }
  }
  return band;
}

}  // namespace acy
