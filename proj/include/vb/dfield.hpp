#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "vb/grid.hpp"

namespace vb {

// d_Omega on inside cells, 0 on complement cells, in world units.
struct DistanceField {
  std::vector<double> values;
  double operator[](int64_t id) const { return values[size_t(id)]; }
  double max_value() const;
};

// Multi-source shortest-path distance (stencil metric over the full box)
// from every inside cell to the nearest complement cell.
DistanceField distance_to_complement(const DomainMask& mask);

// Reusable scratch for truncated searches: dist/stamp arrays sized to the
// grid, epoch-stamped so runs need no clearing.
class DijkstraScratch {
 public:
  void reset(int64_t ncells);
  // begins a new run; returns epoch
  void begin();
  bool seen(int64_t id) const { return stamp_[size_t(id)] == epoch_; }
  double dist(int64_t id) const {
    return seen(id) ? dist_[size_t(id)] : std::numeric_limits<double>::infinity();
  }
  void set(int64_t id, double d) {
    stamp_[size_t(id)] = epoch_;
    dist_[size_t(id)] = d;
  }
  const std::vector<int64_t>& touched() const { return touched_; }
  void touch(int64_t id) { touched_.push_back(id); }

 private:
  std::vector<double> dist_;
  std::vector<uint32_t> stamp_;
  std::vector<int64_t> touched_;
  uint32_t epoch_ = 0;
};

struct BallQuery {
  std::vector<int64_t> cells;   // ascending id
  std::vector<double> dists;    // same order
};

// Metric ball of the grid path metric via truncated Dijkstra, ambient
// (ignores any mask). Closed ball: d <= r with fp slack.
BallQuery metric_ball(const GridSpace& space, int64_t center, double r, DijkstraScratch& scratch);

// Same, constrained to inside cells of the mask (center must be inside).
BallQuery metric_ball_inside(const DomainMask& mask, int64_t center, double r,
                             DijkstraScratch& scratch);

// Ahlfors regularity probe: min/max of mu(B(x,r))/r^Q over sampled centers
// and a dyadic ladder of radii in [r_lo, r_hi]. c_A = max(1/lo, hi).
struct AhlforsEstimate {
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
  double c_A = 0.0;
};
AhlforsEstimate ahlfors_constants(const GridSpace& space, const DomainMask* mask,
                                  int sample_count, double r_lo, double r_hi);

}  // namespace vb
