#include "vb/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace vb {

int worker_count() {
  if (const char* env = std::getenv("VB_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? int(hc) : 1;
}

void parallel_for(int64_t n, const std::function<void(int64_t)>& fn, int workers) {
  int w = workers > 0 ? workers : worker_count();
  if (w <= 1 || n <= 1) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(size_t(w));
  std::exception_ptr err;
  std::mutex err_mu;
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      while (true) {
        int64_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

double GridSpace::euclid(int64_t a, int64_t b) const {
  auto ca = coords(a), cb = coords(b);
  double s = 0;
  for (int k = 0; k < dim; ++k) {
    double d = double(ca[k] - cb[k]) * h;
    s += d * d;
  }
  return std::sqrt(s);
}

double GridSpace::diameter_hint() const {
  double s = 0;
  for (int k = 0; k < dim; ++k) {
    double d = extent[k] * h;
    s += d * d;
  }
  return std::sqrt(s);
}

bool GridSpace::on_world_boundary(int64_t id) const {
  auto c = coords(id);
  for (int k = 0; k < dim; ++k)
    if (c[k] == 0 || c[k] == extent[k] - 1) return true;
  return false;
}

double stencil_distortion(int dim) {
  // Worst direction for the axis+diagonal stencil: in 2D the path cost for
  // direction (1, tan(pi/8)) is (1-t) + t*sqrt(2) over length sqrt(1+t^2),
  // maximized at t = sqrt(2)-1 giving 2*sqrt(2-sqrt(2))/... = 1.0824.
  if (dim == 2) return 1.083;
  return 1.13;
}

GridSpace build_space(int dim, const std::vector<int>& extent, double h,
                      const std::vector<double>& origin, int64_t max_cells) {
  if (dim != 2 && dim != 3) fail(Err::InvalidArgument, "build_space: dim must be 2 or 3");
  if (int(extent.size()) != dim) fail(Err::InvalidArgument, "build_space: extent size != dim");
  if (!(h > 0)) fail(Err::InvalidArgument, "build_space: h must be positive");
  if (int(origin.size()) != dim) fail(Err::InvalidArgument, "build_space: origin size != dim");
  GridSpace g;
  g.dim = dim;
  g.h = h;
  int64_t n = 1;
  for (int k = 0; k < dim; ++k) {
    if (extent[k] < 4) fail(Err::InvalidArgument, "build_space: extent per axis must be >= 4");
    g.extent[k] = extent[k];
    g.origin[k] = origin[k];
    n *= extent[k];
  }
  if (dim == 2) g.extent[2] = 1;
  if (n > max_cells) fail(Err::MemoryBudget, "build_space: cell count exceeds memory budget");
  int zr = (dim == 3) ? 1 : 0;
  for (int dz = -zr; dz <= zr; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        GridSpace::Offset o;
        o.d = {dx, dy, dz};
        o.w = h * std::sqrt(double(dx * dx + dy * dy + dz * dz));
        g.stencil.push_back(o);
      }
  return g;
}

int64_t DomainMask::inside_count() const {
  int64_t n = 0;
  for (uint8_t v : inside) n += v ? 1 : 0;
  return n;
}

void validate_mask(const DomainMask& mask) {
  const GridSpace& g = mask.space;
  if (int64_t(mask.inside.size()) != g.cells())
    fail(Err::InvalidArgument, "mask size does not match space");
  int64_t first = -1, n_inside = 0;
  for (int64_t i = 0; i < g.cells(); ++i)
    if (mask.inside[size_t(i)]) {
      if (first < 0) first = i;
      ++n_inside;
    }
  if (n_inside == 0) fail(Err::EmptyMask, "mask has no inside cells");
  if (n_inside == g.cells()) fail(Err::EmptyMask, "mask has empty complement (domain not proper)");
  // stencil-connectivity by BFS from the first inside cell
  std::vector<uint8_t> seen(mask.inside.size(), 0);
  std::vector<int64_t> queue{first};
  seen[size_t(first)] = 1;
  int64_t reached = 1;
  while (!queue.empty()) {
    int64_t u = queue.back();
    queue.pop_back();
    auto c = g.coords(u);
    for (const auto& o : g.stencil) {
      int x = c[0] + o.d[0], y = c[1] + o.d[1], z = c[2] + o.d[2];
      if (!g.in_bounds(x, y, z)) continue;
      int64_t v = g.id(x, y, z);
      if (!mask.inside[size_t(v)] || seen[size_t(v)]) continue;
      seen[size_t(v)] = 1;
      ++reached;
      queue.push_back(v);
    }
  }
  if (reached != n_inside)
    fail(Err::ConnectivityFailed, "inside set is not stencil-connected");
}

std::vector<int64_t> boundary_cells(const DomainMask& mask) {
  const GridSpace& g = mask.space;
  std::vector<int64_t> out;
  for (int64_t i = 0; i < g.cells(); ++i) {
    if (mask.inside[size_t(i)]) continue;
    auto c = g.coords(i);
    bool adj = false;
    for (int k = 0; k < g.dim && !adj; ++k)
      for (int s = -1; s <= 1 && !adj; s += 2) {
        int x = c[0] + (k == 0 ? s : 0);
        int y = c[1] + (k == 1 ? s : 0);
        int z = c[2] + (k == 2 ? s : 0);
        if (g.in_bounds(x, y, z) && mask.inside[size_t(g.id(x, y, z))]) adj = true;
      }
    if (adj) out.push_back(i);
  }
  return out;
}

}  // namespace vb
