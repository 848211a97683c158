#include "vb/content.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace vb {

namespace {

int tree_levels(const GridSpace& g) {
  int m = std::max({g.extent[0], g.extent[1], g.dim == 3 ? g.extent[2] : 1});
  int L = 0;
  while ((1 << L) < m) ++L;
  return L;
}

uint64_t morton(const GridSpace& g, int64_t id, int L) {
  auto c = g.coords(id);
  uint64_t code = 0;
  for (int b = 0; b < L; ++b)
    for (int k = 0; k < g.dim; ++k)
      code |= uint64_t((c[k] >> b) & 1) << (b * g.dim + k);
  return code;
}

struct Recurse {
  const GridSpace* g;
  const std::vector<uint64_t>* codes;
  double t;
  ContentMode mode;
  std::vector<DyadicCube>* cover;

  double cube_weight(int level, const std::array<int, 3>& origin) const {
    double side_w = double(int64_t(1) << level) * g->h;
    if (mode == ContentMode::Dimension) return std::pow(side_w, t);
    // codimension alpha: mu(cube)/side^alpha with mu measured in the box
    int64_t cells = 1;
    int side_c = 1 << level;
    for (int k = 0; k < g->dim; ++k) {
      int64_t lo = origin[k], hi = std::min<int64_t>(origin[k] + side_c, g->extent[k]);
      cells *= std::max<int64_t>(0, hi - lo);
    }
    double mu = double(cells) * std::pow(g->h, double(g->dim));
    return mu / std::pow(side_w, t);
  }

  double run(size_t begin, size_t end, int level, std::array<int, 3> origin) {
    if (begin == end) return 0.0;
    double here = cube_weight(level, origin);
    if (level == 0) {
      if (cover) cover->push_back({0, origin, g->h, here});
      return here;
    }
    size_t mark = cover ? cover->size() : 0;
    double sum = 0.0;
    int shift = (level - 1) * g->dim;
    size_t i = begin;
    while (i < end) {
      uint64_t child = ((*codes)[i] >> shift) & ((1u << g->dim) - 1);
      size_t j = i;
      while (j < end && (((*codes)[j] >> shift) & ((1u << g->dim) - 1)) == child) ++j;
      std::array<int, 3> corigin = origin;
      int half = 1 << (level - 1);
      for (int k = 0; k < g->dim; ++k)
        if ((child >> k) & 1) corigin[k] += half;
      sum += run(i, j, level - 1, corigin);
      i = j;
    }
    if (here < sum) {
      if (cover) {
        cover->resize(mark);
        cover->push_back({level, origin, double(int64_t(1) << level) * g->h, here});
      }
      return here;
    }
    return sum;
  }
};

}  // namespace

double dyadic_comparability_factor(int dim, double t) {
  return std::pow(2.0 * std::sqrt(double(dim)), t);
}

double dyadic_content(const GridSpace& space, const std::vector<int64_t>& cells, double t,
                      ContentMode mode, std::vector<DyadicCube>* cover) {
  if (t < 0) fail(Err::InvalidArgument, "dyadic_content: exponent must be >= 0");
  if (cells.empty()) return 0.0;  // content of the empty set
  int L = tree_levels(space);
  std::vector<uint64_t> codes;
  codes.reserve(cells.size());
  for (int64_t id : cells) codes.push_back(morton(space, id, L));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  if (cover) cover->clear();
  Recurse r{&space, &codes, t, mode, cover};
  return r.run(0, codes.size(), L, {0, 0, 0});
}

namespace {

struct HeapItem {
  double gain;  // covered / r^t, possibly stale
  int64_t center;
  double radius;
  bool operator<(const HeapItem& o) const {
    if (gain != o.gain) return gain < o.gain;
    if (center != o.center) return center > o.center;
    return radius < o.radius;
  }
};

}  // namespace

ContentResult greedy_cover_content(const GridSpace& space, const std::vector<int64_t>& cells,
                                   double t, const std::vector<double>& radii_ladder) {
  ContentResult res;
  res.comparability_factor = dyadic_comparability_factor(space.dim, t);
  res.dyadic = dyadic_content(space, cells, t);
  res.lower = res.dyadic / res.comparability_factor;
  if (cells.empty()) return res;
  std::vector<double> ladder = radii_ladder;
  if (ladder.empty()) fail(Err::InvalidArgument, "greedy_cover_content: empty radius ladder");
  std::sort(ladder.begin(), ladder.end(), std::greater<double>());
  if (ladder.back() < space.h * (1 - 1e-12))
    fail(Err::InvalidArgument, "greedy_cover_content: ladder below cell scale");

  std::vector<int64_t> sorted(cells);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::unordered_map<int64_t, size_t> index;
  for (size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = i;

  // per-center membership lists at max radius, computed lazily
  DijkstraScratch scratch;
  std::unordered_map<int64_t, std::vector<std::pair<double, size_t>>> reach;
  auto reach_of = [&](int64_t center) -> const std::vector<std::pair<double, size_t>>& {
    auto it = reach.find(center);
    if (it != reach.end()) return it->second;
    BallQuery q = metric_ball(space, center, ladder.front(), scratch);
    std::vector<std::pair<double, size_t>> lst;
    for (size_t i = 0; i < q.cells.size(); ++i) {
      auto f = index.find(q.cells[i]);
      if (f != index.end()) lst.push_back({q.dists[i], f->second});
    }
    std::sort(lst.begin(), lst.end());
    return reach.emplace(center, std::move(lst)).first->second;
  };

  std::vector<uint8_t> covered(sorted.size(), 0);
  size_t n_covered = 0;
  auto count_new = [&](int64_t center, double r) {
    int64_t n = 0;
    for (const auto& [d, i] : reach_of(center)) {
      if (d > r * (1 + 1e-12)) break;
      if (!covered[i]) ++n;
    }
    return n;
  };

  std::priority_queue<HeapItem> heap;
  for (int64_t c : sorted)
    for (double r : ladder)
      heap.push({double(sorted.size()) / std::pow(r, t) + 1.0, c, r});  // optimistic seed

  KahanSum upper;
  while (n_covered < sorted.size() && !heap.empty()) {
    HeapItem top = heap.top();
    heap.pop();
    int64_t fresh = count_new(top.center, top.radius);
    if (fresh == 0) continue;
    double gain = double(fresh) / std::pow(top.radius, t);
    if (!heap.empty() && gain < heap.top().gain * (1 - 1e-12)) {
      top.gain = gain;
      heap.push(top);
      continue;
    }
    // select
    for (const auto& [d, i] : reach_of(top.center)) {
      if (d > top.radius * (1 + 1e-12)) break;
      if (!covered[i]) {
        covered[i] = 1;
        ++n_covered;
      }
    }
    upper.add(std::pow(top.radius, t));
    res.cover.push_back({top.center, top.radius});
  }
  res.upper = upper.value();
  return res;
}

bool cover_covers(const GridSpace& space, const std::vector<int64_t>& cells,
                  const std::vector<CoverBall>& cover) {
  DijkstraScratch scratch;
  std::vector<uint8_t> hit(cells.size(), 0);
  std::unordered_map<int64_t, size_t> index;
  for (size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
  for (const auto& b : cover) {
    BallQuery q = metric_ball(space, b.center, b.radius, scratch);
    for (int64_t id : q.cells) {
      auto f = index.find(id);
      if (f != index.end()) hit[f->second] = 1;
    }
  }
  return std::all_of(hit.begin(), hit.end(), [](uint8_t v) { return v != 0; });
}

double frostman_lower_bound(const GridSpace& space, const TreeMeasureView& nu, double t,
                            const std::vector<double>& scales) {
  if (!(nu.total > 0)) fail(Err::DegenerateMeasure, "frostman_lower_bound: zero total mass");
  if (nu.cells.size() != nu.weights.size())
    fail(Err::InvalidArgument, "frostman_lower_bound: atoms/weights mismatch");
  int L = tree_levels(space);
  double A = 0.0;
  // all dyadic cube levels down to the cell floor
  for (int level = 0; level <= L; ++level) {
    std::unordered_map<uint64_t, double> cube_mass;
    int shift = level * space.dim;
    for (size_t i = 0; i < nu.cells.size(); ++i)
      cube_mass[morton(space, nu.cells[i], L) >> shift] += nu.weights[i];
    double side = double(int64_t(1) << level) * space.h;
    for (const auto& [code, mass] : cube_mass) A = std::max(A, mass / std::pow(side, t));
  }
  // metric balls centered at atoms at the requested scales
  if (!scales.empty() && nu.cells.size() <= 4096) {
    double rmax = *std::max_element(scales.begin(), scales.end());
    DijkstraScratch scratch;
    for (size_t i = 0; i < nu.cells.size(); ++i) {
      BallQuery q = metric_ball(space, nu.cells[i], rmax, scratch);
      std::unordered_map<int64_t, double> dist;
      for (size_t k = 0; k < q.cells.size(); ++k) dist[q.cells[k]] = q.dists[k];
      for (double r : scales) {
        double mass = 0;
        for (size_t jj = 0; jj < nu.cells.size(); ++jj) {
          auto f = dist.find(nu.cells[jj]);
          if (f != dist.end() && f->second <= r * (1 + 1e-12)) mass += nu.weights[jj];
        }
        A = std::max(A, mass / std::pow(r, t));
      }
    }
  }
  return nu.total / A;
}

ThicknessResult thickness_check(const DomainMask& mask, double s,
                                const std::vector<double>& scale_ladder, int center_samples,
                                const std::vector<int64_t>* explicit_centers) {
  const GridSpace& g = mask.space;
  if (!(s > 0) || s > g.dim - 1 + 1e-12)
    fail(Err::InvalidArgument, "thickness_check: s must lie in (0, Q-1]");
  for (double l : scale_ladder)
    if (l < 4 * g.h * (1 - 1e-9))
      fail(Err::InvalidArgument, "thickness_check: scales below 4h");
  std::vector<int64_t> boundary = boundary_cells(mask);
  if (boundary.empty()) fail(Err::EmptyMask, "thickness_check: no boundary cells");
  std::vector<uint8_t> is_boundary(size_t(g.cells()), 0);
  for (int64_t b : boundary) is_boundary[size_t(b)] = 1;

  std::vector<int64_t> centers;
  if (explicit_centers) {
    centers = *explicit_centers;
  } else {
    int64_t stride = std::max<int64_t>(1, int64_t(boundary.size()) / std::max(1, center_samples));
    for (int64_t i = 0; i < int64_t(boundary.size()); i += stride)
      centers.push_back(boundary[i]);
  }
  double lmax = *std::max_element(scale_ladder.begin(), scale_ladder.end());

  ThicknessResult best;
  best.c0 = std::numeric_limits<double>::infinity();
  best.samples = int64_t(centers.size());
  DijkstraScratch scratch;
  for (int64_t omega : centers) {
    BallQuery ball = metric_ball(g, omega, lmax, scratch);
    for (double lambda : scale_ladder) {
      std::vector<int64_t> e;
      for (size_t i = 0; i < ball.cells.size(); ++i)
        if (ball.dists[i] <= lambda * (1 + 1e-12) && is_boundary[size_t(ball.cells[i])])
          e.push_back(ball.cells[i]);
      double ratio = dyadic_content(g, e, s) / std::pow(lambda, s);
      if (ratio < best.c0) {
        best.c0 = ratio;
        best.witness_omega = omega;
        best.witness_lambda = lambda;
      }
    }
  }
  return best;
}

}  // namespace vb
