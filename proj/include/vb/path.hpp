#pragma once

#include <cstdint>
#include <vector>

#include "vb/dfield.hpp"
#include "vb/grid.hpp"

namespace vb {

// Polyline of stencil-adjacent cells. remaining[i] is the arclength from
// cells[i] to the terminal point; remaining.back() == 0.
struct GridPath {
  std::vector<int64_t> cells;
  std::vector<double> remaining;
  double length = 0.0;

  bool empty() const { return cells.empty(); }
};

GridPath make_path(const GridSpace& space, std::vector<int64_t> cells);

// Shortest inside-constrained stencil path from a to b (A*, deterministic
// tie-breaking). Throws NoPath when a and b are in different components.
GridPath geodesic(const DomainMask& mask, int64_t a, int64_t b, DijkstraScratch& scratch);

// Shortest path from inside cell a to the boundary cell omega; the terminal
// vertex is omega itself, every other vertex is inside.
GridPath geodesic_to_boundary(const DomainMask& mask, int64_t a, int64_t omega,
                              DijkstraScratch& scratch);

// Concatenate; b must start where a ends.
GridPath concat_paths(const GridSpace& space, const GridPath& a, const GridPath& b);

// max over non-terminal vertices of remaining / max(d_Omega, h); 0 for a
// single-cell path. Terminal cell may be a boundary (complement) cell.
// Throws PathLeavesDomain if a non-terminal vertex lies outside Omega.
double john_constant_of_path(const GridPath& path, const DomainMask& mask,
                             const DistanceField& dfield);

}  // namespace vb
