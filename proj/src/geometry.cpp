#include "adjoint_cauchy/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "adjoint_cauchy/errors.hpp"
#include "io_util.hpp"

namespace acy {

const char* to_string(RingSide side) noexcept {
  return side == RingSide::inner ? "inner" : "outer";
}

void AnnulusSpec::validate() const {
  if (!(r_inner > 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
    throw InvalidArgument("annulus radii must satisfy 0 < r_inner < r_outer (got r_inner=" +
                          std::to_string(r_inner) + ", r_outer=" + std::to_string(r_outer) + ")");
  }
  if (n_radial < 1) {
    throw InvalidArgument("n_radial must be >= 1 (got " + std::to_string(n_radial) + ")");
  }
  if (n_angular < 3) {
    throw InvalidArgument("n_angular must be >= 3 (got " + std::to_string(n_angular) + ")");
  }
}

AnnulusMesh::AnnulusMesh(const AnnulusSpec& spec) : spec_(spec) {
  spec_.validate();
  const int nr = spec_.n_radial;
  const int na = spec_.n_angular;
  const double dr = (spec_.r_outer - spec_.r_inner) / nr;

  nodes_.reserve(static_cast<std::size_t>(nr + 1) * na);
  angles_.reserve(nodes_.capacity());
  for (int i = 0; i <= nr; ++i) {
    // Pin the end layers to the exact radii instead of accumulating dr.
    const double r = i == nr ? spec_.r_outer : spec_.r_inner + i * dr;
    for (int k = 0; k < na; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / na;
      nodes_.push_back({r * std::cos(theta), r * std::sin(theta)});
      angles_.push_back(theta);
    }
  }

  triangles_.reserve(static_cast<std::size_t>(2) * nr * na);
  const auto id = [na](int layer, int sector) { return layer * na + (sector % na); };
  for (int i = 0; i < nr; ++i) {
    for (int k = 0; k < na; ++k) {
      const int a = id(i, k);
      const int b = id(i, k + 1);
      const int c = id(i + 1, k + 1);
      const int d = id(i + 1, k);
      triangles_.push_back({a, d, c});
      triangles_.push_back({a, c, b});
    }
  }

  inner_.side = RingSide::inner;
  inner_.radius = spec_.r_inner;
  outer_.side = RingSide::outer;
  outer_.radius = spec_.r_outer;
  for (int k = 0; k < na; ++k) {
    inner_.nodes.push_back(id(0, k));
    inner_.angles.push_back(angles_[id(0, k)]);
    outer_.nodes.push_back(id(nr, k));
    outer_.angles.push_back(angles_[id(nr, k)]);
  }
}

int AnnulusMesh::ring_position(int node) const noexcept {
  const int na = spec_.n_angular;
  if (node < na) return node;
  if (node >= spec_.n_radial * na) return node - spec_.n_radial * na;
  return -1;
}

int AnnulusMesh::ring_tag(int node) const noexcept {
  const int na = spec_.n_angular;
  if (node < na) return 1;
  if (node >= spec_.n_radial * na) return 2;
  return 0;
}

double AnnulusMesh::signed_area(const Triangle& t) const noexcept {
  const Point& p0 = nodes_[t[0]];
  const Point& p1 = nodes_[t[1]];
  const Point& p2 = nodes_[t[2]];
  return 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
}

double AnnulusMesh::total_area() const noexcept {
  double sum = 0.0;
  for (const auto& t : triangles_) sum += signed_area(t);
  return sum;
}

AnnulusMesh generate_mesh(const AnnulusSpec& spec) { return AnnulusMesh(spec); }

const Ring& boundary_ring(const AnnulusMesh& mesh, RingSide side) noexcept {
  return mesh.ring(side);
}

void write_mesh_csv(const AnnulusMesh& mesh, const std::filesystem::path& prefix) {
  {
    auto out = detail::open_output(detail::prefixed(prefix, "nodes.csv"));
    out << "id,x,y,ring\n";
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
      out << i << ',' << detail::format_double(mesh.nodes()[i].x) << ','
          << detail::format_double(mesh.nodes()[i].y) << ',' << mesh.ring_tag(static_cast<int>(i))
          << '\n';
    }
  }
  auto out = detail::open_output(detail::prefixed(prefix, "tris.csv"));
  out << "id,n0,n1,n2\n";
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) {
    const auto& t = mesh.triangles()[i];
    out << i << ',' << t[0] << ',' << t[1] << ',' << t[2] << '\n';
  }
}

}  // namespace acy
