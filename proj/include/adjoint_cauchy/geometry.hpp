#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace acy {

enum class RingSide { inner, outer };

const char* to_string(RingSide side) noexcept;

struct AnnulusSpec {
  double r_inner = 1.0;
  double r_outer = 3.0;
  int n_radial = 27;
  int n_angular = 160;

  // Throws InvalidArgument when 0 < r_inner < r_outer, n_radial >= 1 or
  // n_angular >= 3 is violated.
  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Triangle = std::array<int, 3>;

// Ordered boundary ring: node ids sorted by increasing polar angle from 0.
struct Ring {
  RingSide side = RingSide::inner;
  double radius = 0.0;
  std::vector<int> nodes;
  std::vector<double> angles;

  std::size_t size() const noexcept { return nodes.size(); }
};

// Structured triangulation of R_inner < r < R_outer on a uniform polar grid.
// Node (layer i, sector k) has id i * n_angular + k; layer 0 is the inner
// circle, layer n_radial the outer one.
class AnnulusMesh {
public:
  explicit AnnulusMesh(const AnnulusSpec& spec);

  const AnnulusSpec& spec() const noexcept { return spec_; }
  const std::vector<Point>& nodes() const noexcept { return nodes_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<double>& node_angles() const noexcept { return angles_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t triangle_count() const noexcept { return triangles_.size(); }

  const Ring& ring(RingSide side) const noexcept {
    return side == RingSide::inner ? inner_ : outer_;
  }

  // Returns -1 for interior nodes, otherwise the position within its ring.
  int ring_position(int node) const noexcept;
  // Ring tag used in dumps: 0 interior, 1 inner, 2 outer.
  int ring_tag(int node) const noexcept;

  double signed_area(const Triangle& t) const noexcept;
  double total_area() const noexcept;

private:
  AnnulusSpec spec_;
  std::vector<Point> nodes_;
  std::vector<double> angles_;
  std::vector<Triangle> triangles_;
  Ring inner_;
  Ring outer_;
};

AnnulusMesh generate_mesh(const AnnulusSpec& spec);

const Ring& boundary_ring(const AnnulusMesh& mesh, RingSide side) noexcept;

// Writes <prefix>nodes.csv (id,x,y,ring) and <prefix>tris.csv (id,n0,n1,n2).
void write_mesh_csv(const AnnulusMesh& mesh, const std::filesystem::path& prefix);

}  // namespace acy
