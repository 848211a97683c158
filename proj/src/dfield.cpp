#include "vb/dfield.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace vb {

namespace {

struct QEntry {
  float key;
  int64_t id;
  bool operator>(const QEntry& o) const {
    return key > o.key || (key == o.key && id > o.id);
  }
};
using MinQueue = std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>>;

}  // namespace

double DistanceField::max_value() const {
  double m = 0;
  for (double v : values) m = std::max(m, v);
  return m;
}

DistanceField distance_to_complement(const DomainMask& mask) {
  const GridSpace& g = mask.space;
  const int64_t n = g.cells();
  DistanceField f;
  f.values.assign(size_t(n), std::numeric_limits<double>::infinity());
  MinQueue pq;
  // seed complement cells that can reach an inside cell in one step
  for (int64_t i = 0; i < n; ++i) {
    if (mask.inside[size_t(i)]) continue;
    f.values[size_t(i)] = 0.0;
    auto c = g.coords(i);
    bool near_inside = false;
    for (const auto& o : g.stencil) {
      int x = c[0] + o.d[0], y = c[1] + o.d[1], z = c[2] + o.d[2];
      if (g.in_bounds(x, y, z) && mask.inside[size_t(g.id(x, y, z))]) {
        near_inside = true;
        break;
      }
    }
    if (near_inside) pq.push({0.0f, i});
  }
  while (!pq.empty()) {
    auto [key, u] = pq.top();
    pq.pop();
    double du = f.values[size_t(u)];
    if (double(key) > du * (1 + 1e-12) + 1e-300) continue;  // stale
    auto c = g.coords(u);
    for (const auto& o : g.stencil) {
      int x = c[0] + o.d[0], y = c[1] + o.d[1], z = c[2] + o.d[2];
      if (!g.in_bounds(x, y, z)) continue;
      int64_t v = g.id(x, y, z);
      if (!mask.inside[size_t(v)]) continue;
      double nd = du + o.w;
      if (nd < f.values[size_t(v)]) {
        f.values[size_t(v)] = nd;
        pq.push({float(nd), v});
      }
    }
  }
  return f;
}

void DijkstraScratch::reset(int64_t ncells) {
  if (int64_t(dist_.size()) != ncells) {
    dist_.assign(size_t(ncells), 0.0);
    stamp_.assign(size_t(ncells), 0);
    epoch_ = 0;
  }
}

void DijkstraScratch::begin() {
  ++epoch_;
  touched_.clear();
  if (epoch_ == 0) {  // wrapped
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

namespace {

// Truncated Dijkstra core. expandable(v) gates which cells may carry labels.
template <typename Expandable>
void ball_scan(const GridSpace& g, int64_t center, double r, DijkstraScratch& scratch,
               Expandable expandable, BallQuery& out) {
  scratch.reset(g.cells());
  scratch.begin();
  const double cap = r * (1 + 1e-12) + 1e-300;
  MinQueue pq;
  scratch.set(center, 0.0);
  scratch.touch(center);
  pq.push({0.0f, center});
  while (!pq.empty()) {
    auto [key, u] = pq.top();
    pq.pop();
    double du = scratch.dist(u);
    if (double(key) > du * (1 + 1e-9) + 1e-300) continue;
    auto c = g.coords(u);
    for (const auto& o : g.stencil) {
      int x = c[0] + o.d[0], y = c[1] + o.d[1], z = c[2] + o.d[2];
      if (!g.in_bounds(x, y, z)) continue;
      int64_t v = g.id(x, y, z);
      if (!expandable(v)) continue;
      double nd = du + o.w;
      if (nd > cap) continue;
      if (nd < scratch.dist(v)) {
        if (!scratch.seen(v)) scratch.touch(v);
        scratch.set(v, nd);
        pq.push({float(nd), v});
      }
    }
  }
  out.cells.assign(scratch.touched().begin(), scratch.touched().end());
  std::sort(out.cells.begin(), out.cells.end());
  out.dists.resize(out.cells.size());
  for (size_t i = 0; i < out.cells.size(); ++i) out.dists[i] = scratch.dist(out.cells[i]);
}

}  // namespace

BallQuery metric_ball(const GridSpace& space, int64_t center, double r,
                      DijkstraScratch& scratch) {
  BallQuery q;
  ball_scan(space, center, r, scratch, [](int64_t) { return true; }, q);
  return q;
}

BallQuery metric_ball_inside(const DomainMask& mask, int64_t center, double r,
                             DijkstraScratch& scratch) {
  if (!mask.is_inside(center)) fail(Err::InvalidArgument, "metric_ball_inside: center not inside");
  BallQuery q;
  ball_scan(mask.space, center, r, scratch,
            [&mask](int64_t v) { return mask.is_inside(v); }, q);
  return q;
}

AhlforsEstimate ahlfors_constants(const GridSpace& space, const DomainMask* mask,
                                  int sample_count, double r_lo, double r_hi) {
  if (r_lo < 2 * space.h * (1 - 1e-12))
    fail(Err::InvalidArgument, "ahlfors_constants: r below the 2h discretization regime");
  if (r_hi < r_lo) fail(Err::InvalidArgument, "ahlfors_constants: empty radius range");
  std::vector<int64_t> centers;
  if (mask) {
    std::vector<int64_t> inside;
    for (int64_t i = 0; i < space.cells(); ++i)
      if (mask->inside[size_t(i)]) inside.push_back(i);
    int64_t stride = std::max<int64_t>(1, int64_t(inside.size()) / std::max(1, sample_count));
    for (int64_t i = 0; i < int64_t(inside.size()); i += stride) centers.push_back(inside[i]);
  } else {
    int64_t stride = std::max<int64_t>(1, space.cells() / std::max(1, sample_count));
    for (int64_t i = 0; i < space.cells(); i += stride) centers.push_back(i);
  }
  // dyadic-ish radius ladder, half-octave steps
  std::vector<double> radii;
  for (double r = r_lo; r <= r_hi * (1 + 1e-12); r *= std::sqrt(2.0)) radii.push_back(r);
  if (radii.empty() || radii.back() < r_hi * (1 - 1e-12)) radii.push_back(r_hi);

  AhlforsEstimate est;
  est.ratio_lo = std::numeric_limits<double>::infinity();
  est.ratio_hi = 0.0;
  DijkstraScratch scratch;
  const double q = double(space.dim);
  const double cellmu = std::pow(space.h, q);
  for (int64_t c : centers) {
    BallQuery ball = mask ? metric_ball_inside(*mask, c, radii.back(), scratch)
                          : metric_ball(space, c, radii.back(), scratch);
    for (double r : radii) {
      int64_t count = 0;
      for (double d : ball.dists)
        if (d <= r * (1 + 1e-12)) ++count;
      double ratio = double(count) * cellmu / std::pow(r, q);
      est.ratio_lo = std::min(est.ratio_lo, ratio);
      est.ratio_hi = std::max(est.ratio_hi, ratio);
    }
  }
  est.c_A = std::max(1.0 / est.ratio_lo, est.ratio_hi);
  return est;
}

}  // namespace vb
