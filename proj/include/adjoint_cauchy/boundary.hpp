#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "adjoint_cauchy/geometry.hpp"

namespace acy {

// Nodal samples of a scalar function on one boundary circle, at the
// equispaced angles theta_k = 2*pi*k/n.
struct BoundaryFunction {
  RingSide side = RingSide::inner;
  double radius = 1.0;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double angle(std::size_t k) const noexcept;

  static BoundaryFunction zeros(RingSide side, double radius, std::size_t n);
  static BoundaryFunction sampled(RingSide side, double radius, std::size_t n,
                                  const std::function<double(double)>& fn);
  static BoundaryFunction on_ring(const Ring& ring, const std::function<double(double)>& fn);

  bool same_ring(const BoundaryFunction& other) const noexcept;
  bool all_finite() const noexcept;
};

// Throws InvalidArgument naming `what` if the two functions live on different rings.
void require_same_ring(const BoundaryFunction& a, const BoundaryFunction& b, const char* what);
// Throws InvalidArgument if f is not sampled on `ring`.
void require_on_ring(const BoundaryFunction& f, const Ring& ring, const char* what);

// a + alpha * b
BoundaryFunction axpy(const BoundaryFunction& a, double alpha, const BoundaryFunction& b);
BoundaryFunction scaled(const BoundaryFunction& a, double alpha);

double max_abs(const BoundaryFunction& f) noexcept;

}  // namespace acy
