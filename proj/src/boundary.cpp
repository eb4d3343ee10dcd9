#include "adjoint_cauchy/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adjoint_cauchy/errors.hpp"

namespace acy {

double BoundaryFunction::angle(std::size_t k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(values.size());
}

BoundaryFunction BoundaryFunction::zeros(RingSide side, double radius, std::size_t n) {
  return {side, radius, std::vector<double>(n, 0.0)};
}

BoundaryFunction BoundaryFunction::sampled(RingSide side, double radius, std::size_t n,
                                           const std::function<double(double)>& fn) {
  BoundaryFunction f = zeros(side, radius, n);
  for (std::size_t k = 0; k < n; ++k) f.values[k] = fn(f.angle(k));
  return f;
}

BoundaryFunction BoundaryFunction::on_ring(const Ring& ring,
                                           const std::function<double(double)>& fn) {
  BoundaryFunction f = zeros(ring.side, ring.radius, ring.size());
  for (std::size_t k = 0; k < ring.size(); ++k) f.values[k] = fn(ring.angles[k]);
  return f;
}

bool BoundaryFunction::same_ring(const BoundaryFunction& other) const noexcept {
  return side == other.side && values.size() == other.values.size() &&
         std::abs(radius - other.radius) <= 1e-12 * std::max(1.0, std::abs(radius));
}

bool BoundaryFunction::all_finite() const noexcept {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void require_same_ring(const BoundaryFunction& a, const BoundaryFunction& b, const char* what) {
  if (!a.same_ring(b)) {
    throw InvalidArgument(std::string(what) + ": boundary functions live on different rings (" +
                          to_string(a.side) + "/" + std::to_string(a.size()) + " vs " +
                          to_string(b.side) + "/" + std::to_string(b.size()) + ")");
  }
}

void require_on_ring(const BoundaryFunction& f, const Ring& ring, const char* what) {
  const bool ok = f.side == ring.side && f.size() == ring.size() &&
                  std::abs(f.radius - ring.radius) <= 1e-12 * std::max(1.0, ring.radius);
  if (!ok) {
    throw InvalidArgument(std::string(what) + ": expected a function on the " +
                          to_string(ring.side) + " ring with " + std::to_string(ring.size()) +
                          " nodes, got " + to_string(f.side) + "/" + std::to_string(f.size()));
  }
}

BoundaryFunction axpy(const BoundaryFunction& a, double alpha, const BoundaryFunction& b) {
  require_same_ring(a, b, "axpy");
  BoundaryFunction out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] += alpha * b.values[k];
  return out;
}

BoundaryFunction scaled(const BoundaryFunction& a, double alpha) {
  BoundaryFunction out = a;
  for (double& v : out.values) v *= alpha;
  return out;
}

double max_abs(const BoundaryFunction& f) noexcept {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace acy
