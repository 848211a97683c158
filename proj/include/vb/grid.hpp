#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vb/common.hpp"

namespace vb {

// Discretized ambient space: a box of cells with the axis+diagonal stencil
// metric (8 neighbors in 2D, 26 in 3D, Euclidean edge weights in world
// units). Cell (i,j,k) has center origin + (i+1/2, j+1/2, k+1/2)*h and
// measure exactly h^dim.
struct GridSpace {
  int dim = 2;
  std::array<int, 3> extent{1, 1, 1};  // extent[2] == 1 when dim == 2
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  double h = 1.0;

  struct Offset {
    std::array<int, 3> d;
    double w;  // edge weight in world units: h * |d|
  };
  std::vector<Offset> stencil;

  int64_t cells() const { return int64_t(extent[0]) * extent[1] * extent[2]; }

  int64_t id(int x, int y, int z = 0) const {
    return (int64_t(z) * extent[1] + y) * extent[0] + x;
  }
  std::array<int, 3> coords(int64_t id) const {
    int x = int(id % extent[0]);
    int64_t r = id / extent[0];
    int y = int(r % extent[1]);
    int z = int(r / extent[1]);
    return {x, y, z};
  }
  bool in_bounds(int x, int y, int z) const {
    return x >= 0 && x < extent[0] && y >= 0 && y < extent[1] && z >= 0 && z < extent[2];
  }
  std::array<double, 3> world(int64_t id) const {
    auto c = coords(id);
    return {origin[0] + (c[0] + 0.5) * h, origin[1] + (c[1] + 0.5) * h,
            origin[2] + (c[2] + 0.5) * h};
  }
  double euclid(int64_t a, int64_t b) const;

  double diameter_hint() const;  // box diagonal in world units

  bool on_world_boundary(int64_t id) const;
};

// dim in {2,3}; extent per axis >= 4; h > 0. The path metric is bi-Lipschitz
// to Euclidean: length <= sqrt(dim)*|a-b| on axis-only routes and
// <= 1.083*|a-b| (2D) / 1.13*|a-b| (3D) with diagonals.
GridSpace build_space(int dim, const std::vector<int>& extent, double h,
                      const std::vector<double>& origin,
                      int64_t max_cells = int64_t(1) << 26);

// Maximum ratio (stencil path length)/(Euclidean distance) in free space.
double stencil_distortion(int dim);

// The domain: inside cells form a nonempty, stencil-connected proper subset.
struct DomainMask {
  GridSpace space;
  std::vector<uint8_t> inside;

  bool is_inside(int64_t id) const { return inside[size_t(id)] != 0; }
  int64_t inside_count() const;
};

// Throws EmptyMask / ConnectivityFailed when the mask is not a domain.
void validate_mask(const DomainMask& mask);

// Boundary of the domain: complement cells face-adjacent to an inside cell,
// ascending cell id.
std::vector<int64_t> boundary_cells(const DomainMask& mask);

}  // namespace vb
