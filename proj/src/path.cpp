#include "vb/path.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace vb {

namespace {

double edge_weight(const GridSpace& g, int64_t a, int64_t b) {
  auto ca = g.coords(a), cb = g.coords(b);
  int dx = ca[0] - cb[0], dy = ca[1] - cb[1], dz = ca[2] - cb[2];
  return g.h * std::sqrt(double(dx * dx + dy * dy + dz * dz));
}

struct AEntry {
  double f, g;
  int64_t id;
  bool operator>(const AEntry& o) const {
    if (f != o.f) return f > o.f;
    if (g != o.g) return g > o.g;
    return id > o.id;
  }
};
using AQueue = std::priority_queue<AEntry, std::vector<AEntry>, std::greater<AEntry>>;

}  // namespace

GridPath make_path(const GridSpace& space, std::vector<int64_t> cells) {
  GridPath p;
  p.cells = std::move(cells);
  p.remaining.assign(p.cells.size(), 0.0);
  if (p.cells.empty()) return p;
  KahanSum len;
  for (size_t i = p.cells.size(); i-- > 1;) {
    len.add(edge_weight(space, p.cells[i - 1], p.cells[i]));
    p.remaining[i - 1] = len.value();
  }
  p.length = len.value();
  return p;
}

namespace {

// A* from a to target; passable(v) limits the vertex set (target always
// passable). Deterministic: queue ordered by (f, g, id), relaxations improve
// strictly.
GridPath astar(const DomainMask& mask, int64_t a, int64_t target,
               const std::function<bool(int64_t)>& passable, DijkstraScratch& scratch) {
  const GridSpace& g = mask.space;
  scratch.reset(g.cells());
  scratch.begin();
  std::unordered_map<int64_t, int64_t> parent;
  AQueue pq;
  scratch.set(a, 0.0);
  scratch.touch(a);
  pq.push({g.euclid(a, target), 0.0, a});
  while (!pq.empty()) {
    auto top = pq.top();
    pq.pop();
    int64_t u = top.id;
    if (top.g > scratch.dist(u) * (1 + 1e-12) + 1e-300) continue;
    if (u == target) {
      std::vector<int64_t> cells{u};
      while (u != a) {
        u = parent.at(u);
        cells.push_back(u);
      }
      std::reverse(cells.begin(), cells.end());
      return make_path(g, std::move(cells));
    }
    auto c = g.coords(u);
    for (const auto& o : g.stencil) {
      int x = c[0] + o.d[0], y = c[1] + o.d[1], z = c[2] + o.d[2];
      if (!g.in_bounds(x, y, z)) continue;
      int64_t v = g.id(x, y, z);
      if (v != target && !passable(v)) continue;
      double nd = scratch.dist(u) + o.w;
      if (nd < scratch.dist(v)) {
        if (!scratch.seen(v)) scratch.touch(v);
        scratch.set(v, nd);
        parent[v] = u;
        pq.push({nd + g.euclid(v, target), nd, v});
      }
    }
  }
  fail(Err::NoPath, "geodesic: endpoints lie in different components");
}

}  // namespace

GridPath geodesic(const DomainMask& mask, int64_t a, int64_t b, DijkstraScratch& scratch) {
  if (!mask.is_inside(a) || !mask.is_inside(b))
    fail(Err::InvalidArgument, "geodesic: endpoints must be inside cells");
  if (a == b) return make_path(mask.space, {a});
  return astar(mask, a, b, [&mask](int64_t v) { return mask.is_inside(v); }, scratch);
}

GridPath geodesic_to_boundary(const DomainMask& mask, int64_t a, int64_t omega,
                              DijkstraScratch& scratch) {
  if (!mask.is_inside(a)) fail(Err::InvalidArgument, "geodesic_to_boundary: a must be inside");
  if (mask.is_inside(omega))
    fail(Err::InvalidArgument, "geodesic_to_boundary: omega must be a complement cell");
  return astar(mask, a, omega, [&mask](int64_t v) { return mask.is_inside(v); }, scratch);
}

GridPath concat_paths(const GridSpace& space, const GridPath& a, const GridPath& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.cells.back() != b.cells.front())
    fail(Err::InvalidArgument, "concat_paths: paths do not share a joint vertex");
  std::vector<int64_t> cells = a.cells;
  cells.insert(cells.end(), b.cells.begin() + 1, b.cells.end());
  return make_path(space, std::move(cells));
}

double john_constant_of_path(const GridPath& path, const DomainMask& mask,
                             const DistanceField& dfield) {
  if (path.cells.size() <= 1) return 0.0;
  const double h = mask.space.h;
  double c = 0.0;
  for (size_t i = 0; i + 1 < path.cells.size(); ++i) {
    int64_t v = path.cells[i];
    if (!mask.is_inside(v))
      fail(Err::PathLeavesDomain, "john_constant_of_path: interior vertex outside the domain");
    c = std::max(c, path.remaining[i] / std::max(dfield[v], h));
  }
  return c;
}

}  // namespace vb
