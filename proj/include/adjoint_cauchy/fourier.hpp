#pragma once

#include <cstddef>
#include <optional>

#include "adjoint_cauchy/boundary.hpp"
#include "adjoint_cauchy/spectral.hpp"

namespace acy {

// Highest mode an n-point equispaced ring resolves without aliasing.
int resolvable_mode(std::size_t n) noexcept;

// Direct DFT normalized so that f(theta_k) = sum_j a_j exp(i j theta_k).
// max_mode < 0 selects resolvable_mode(n); a larger request than the ring
// supports throws InvalidArgument. On even rings the unpaired Nyquist
// coefficient is dropped, with a warning on stderr when it is not negligible.
// Round-off level coefficients are pruned.
FourierBoundary analyze(const BoundaryFunction& f, int max_mode = -1);

// Real samples of the series on an n-point ring. Throws InvalidArgument if
// the band exceeds resolvable_mode(n).
BoundaryFunction synthesize(const FourierBoundary& c, RingSide side, std::size_t n);
BoundaryFunction synthesize(const FourierBoundary& c, const Ring& ring);

struct Band {
  int low = 0;   // M
  int high = 0;  // N
  friend bool operator==(const Band&, const Band&) = default;
};

inline constexpr double kDefaultBandThreshold = 1e-8;

// Smallest and largest |j| whose coefficient exceeds threshold * max|a_j|.
// Empty when every coefficient vanishes.
std::optional<Band> detect_band(const FourierBoundary& c, double threshold = kDefaultBandThreshold);

}  // namespace acy
