#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vb/dfield.hpp"
#include "vb/grid.hpp"

namespace vb {

enum class ContentMode { Dimension, Codimension };

// A dyadic cube of the tree rooted at the padded power-of-two box aligned to
// cell (0,...,0). side_w = 2^level * h.
struct DyadicCube {
  int level;
  std::array<int, 3> origin;  // cell coords of the low corner
  double side_w;
  double value;
};

// Exact value of the dyadic-cover content of a cell set:
//   C(cube) = 0 if cube misses E; side^t at leaf cells; else min(side^t,
//   sum over children). Dimension mode weighs cubes by side^t; codimension
//   mode by mu(cube)/side^alpha with mu measured against the box extent.
// Empty E returns 0. Comparable to the ball-cover content within
// (2*sqrt(dim))^t (reported by callers that mix the two).
double dyadic_content(const GridSpace& space, const std::vector<int64_t>& cells, double t,
                      ContentMode mode = ContentMode::Dimension,
                      std::vector<DyadicCube>* cover = nullptr);

double dyadic_comparability_factor(int dim, double t);

struct CoverBall {
  int64_t center;
  double radius;
};

struct ContentResult {
  double lower = 0.0;  // dyadic value / comparability factor
  double upper = 0.0;  // realized greedy ball cover
  double comparability_factor = 1.0;
  double dyadic = 0.0;
  std::vector<CoverBall> cover;
};

// Greedy weighted set cover by metric balls centered at cells of E, radii
// from the descending ladder, largest newly-covered-per-r^t first. Order
// dependent and sequential by design.
ContentResult greedy_cover_content(const GridSpace& space, const std::vector<int64_t>& cells,
                                   double t, const std::vector<double>& radii_ladder);

// True iff every cell of E lies in some ball of the cover (grid metric).
bool cover_covers(const GridSpace& space, const std::vector<int64_t>& cells,
                  const std::vector<CoverBall>& cover);

// Atoms of a finite measure (tree measure truncation).
struct TreeMeasureView {
  std::vector<int64_t> cells;
  std::vector<double> weights;
  double total = 0.0;
};

// Mass distribution principle: A = max over all dyadic cubes (all levels
// down to the cell floor) and over metric balls centered at atoms with radii
// from `scales` of nu(.)/size^t; returns total/A.
double frostman_lower_bound(const GridSpace& space, const TreeMeasureView& nu, double t,
                            const std::vector<double>& scales);

struct ThicknessResult {
  double c0 = 0.0;
  int64_t witness_omega = -1;
  double witness_lambda = 0.0;
  int64_t samples = 0;
};

// min over sampled boundary cells and ladder scales of
// dyadic_content(B(omega, lambda) ∩ ∂Omega, s) / lambda^s.
ThicknessResult thickness_check(const DomainMask& mask, double s,
                                const std::vector<double>& scale_ladder, int center_samples,
                                const std::vector<int64_t>* explicit_centers = nullptr);

}  // namespace vb
