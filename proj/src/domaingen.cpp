#include "vb/domaingen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"
#include "vb/maskio.hpp"

namespace vb {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct P2 {
  double x, y;
};

// Rectilinear polygon rasterization by scanline parity. Vertical edges only
// cross horizontal scanlines; cell centers sit at half-integer multiples of
// h while vertices sit on the integer lattice, so comparisons are exact.
void rasterize_rectilinear(const GridSpace& g, const std::vector<P2>& poly,
                           std::vector<uint8_t>& inside) {
  for (int y = 0; y < g.extent[1]; ++y) {
    double yc = g.origin[1] + (y + 0.5) * g.h;
    std::vector<double> xs;
    for (size_t i = 0; i < poly.size(); ++i) {
      const P2& a = poly[i];
      const P2& b = poly[(i + 1) % poly.size()];
      if (a.x != b.x) continue;  // horizontal edge
      double ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
      if (yc > ylo && yc < yhi) xs.push_back(a.x);
    }
    std::sort(xs.begin(), xs.end());
    for (size_t k = 0; k + 1 < xs.size(); k += 2) {
      int x0 = int(std::ceil((xs[k] - g.origin[0]) / g.h - 0.5));
      int x1 = int(std::floor((xs[k + 1] - g.origin[0]) / g.h - 0.5));
      x0 = std::max(x0, 0);
      x1 = std::min(x1, g.extent[0] - 1);
      for (int x = x0; x <= x1; ++x) inside[size_t(g.id(x, y))] = 1;
    }
  }
}

DomainMask finish(DomainMask mask) {
  validate_mask(mask);
  return mask;
}

double pick_h(const DomainSpec& s) {
  return s.h > 0 ? s.h : s.world_size / s.resolution;
}

DomainMask gen_disk(const DomainSpec& s) {
  double h = pick_h(s);
  GridSpace g = build_space(2, {s.resolution, s.resolution}, h, {0.0, 0.0});
  DomainMask m{g, std::vector<uint8_t>(size_t(g.cells()), 0)};
  double cx = s.world_size / 2, cy = s.world_size / 2, R = s.radius;
  for (int y = 0; y < g.extent[1]; ++y)
    for (int x = 0; x < g.extent[0]; ++x) {
      double dx = (x + 0.5) * h - cx, dy = (y + 0.5) * h - cy;
      if (dx * dx + dy * dy < R * R) m.inside[size_t(g.id(x, y))] = 1;
    }
  return finish(std::move(m));
}

DomainMask gen_square(const DomainSpec& s) {
  double h = pick_h(s);
  GridSpace g = build_space(2, {s.resolution, s.resolution}, h, {0.0, 0.0});
  DomainMask m{g, std::vector<uint8_t>(size_t(g.cells()), 0)};
  double lo = (s.world_size - s.side) / 2, hi = lo + s.side;
  for (int y = 0; y < g.extent[1]; ++y)
    for (int x = 0; x < g.extent[0]; ++x) {
      double xc = (x + 0.5) * h, yc = (y + 0.5) * h;
      if (xc > lo && xc < hi && yc > lo && yc < hi) m.inside[size_t(g.id(x, y))] = 1;
    }
  return finish(std::move(m));
}

DomainMask gen_porous(const DomainSpec& s) {
  double h = pick_h(s);
  DomainSpec base = s;
  DomainMask m = gen_square(base);
  const GridSpace& g = m.space;
  // deterministic hole centers: seeded low-discrepancy jitter, greedily
  // spaced so holes stay disjoint and off the outer wall
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> uni(0.2, 0.8);
  std::vector<P2> centers;
  int attempts = 0;
  while (int(centers.size()) < s.holes && attempts < 10000) {
    ++attempts;
    P2 p{uni(rng) * s.world_size, uni(rng) * s.world_size};
    bool ok = true;
    for (const P2& q : centers) {
      double d = std::hypot(p.x - q.x, p.y - q.y);
      if (d < 2 * s.hole_radius + 4 * h) ok = false;
    }
    if (ok) centers.push_back(p);
  }
  if (int(centers.size()) < s.holes)
    fail(Err::GenerationFailed, "porous: cannot place requested holes disjointly");
  for (int y = 0; y < g.extent[1]; ++y)
    for (int x = 0; x < g.extent[0]; ++x) {
      double xc = (x + 0.5) * h, yc = (y + 0.5) * h;
      for (const P2& q : centers) {
        double dx = xc - q.x, dy = yc - q.y;
        if (dx * dx + dy * dy < s.hole_radius * s.hole_radius) {
          m.inside[size_t(g.id(x, y))] = 0;
          break;
        }
      }
    }
  return finish(std::move(m));
}

DomainMask gen_carpet(const DomainSpec& s) {
  double h = pick_h(s);
  GridSpace g = build_space(2, {s.resolution, s.resolution}, h, {0.0, 0.0});
  DomainMask m{g, std::vector<uint8_t>(size_t(g.cells()), 0)};
  double lo = (s.world_size - s.side) / 2, hi = lo + s.side;
  for (int y = 0; y < g.extent[1]; ++y)
    for (int x = 0; x < g.extent[0]; ++x) {
      double xc = (x + 0.5) * h, yc = (y + 0.5) * h;
      if (!(xc > lo && xc < hi && yc > lo && yc < hi)) continue;
      double u = (xc - lo) / s.side, v = (yc - lo) / s.side;
      bool removed = false;
      for (int lev = 1; lev <= s.carpet_level && !removed; ++lev) {
        double p3 = std::pow(3.0, lev);
        int du = int(std::floor(u * p3)) % 3;
        int dv = int(std::floor(v * p3)) % 3;
        if (du == 1 && dv == 1) removed = true;
      }
      if (!removed) m.inside[size_t(g.id(x, y))] = 1;
    }
  return finish(std::move(m));
}

std::vector<P2> koch_polygon(int level, double h, int side_cells, int offset_cells) {
  // quadric Koch substitution: each edge is replaced by 8 edges of a quarter
  // of its length with bumps to both sides (length doubles per level)
  std::vector<P2> poly;
  double o = offset_cells * h, S = side_cells * h;
  poly = {{o, o}, {o + S, o}, {o + S, o + S}, {o, o + S}};
  for (int lev = 0; lev < level; ++lev) {
    std::vector<P2> next;
    for (size_t i = 0; i < poly.size(); ++i) {
      P2 a = poly[i], b = poly[(i + 1) % poly.size()];
      double ux = (b.x - a.x) / 4, uy = (b.y - a.y) / 4;
      double nx = -uy, ny = ux;
      next.push_back(a);
      next.push_back({a.x + ux, a.y + uy});
      next.push_back({a.x + ux + nx, a.y + uy + ny});
      next.push_back({a.x + 2 * ux + nx, a.y + 2 * uy + ny});
      next.push_back({a.x + 2 * ux, a.y + 2 * uy});
      next.push_back({a.x + 2 * ux - nx, a.y + 2 * uy - ny});
      next.push_back({a.x + 3 * ux - nx, a.y + 3 * uy - ny});
      next.push_back({a.x + 3 * ux, a.y + 3 * uy});
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

DomainMask koch_flake(int level, double h) {
  if (level < 0) fail(Err::InvalidArgument, "koch_flake: negative level");
  int res = int(std::llround(1.0 / h));
  if (std::abs(res * h - 1.0) > 1e-9) res = std::max(8, res);
  GridSpace g = build_space(2, {res, res}, h, {0.0, 0.0});
  // base square snapped so every vertex lies on the cell-corner lattice
  int64_t denom = 1;
  for (int i = 0; i < level; ++i) denom *= 4;
  int side_cells = int((res / 2) / denom * denom);
  if (side_cells <= 0 || side_cells / denom < 4)
    fail(Err::LevelTooDeep, "koch_flake: features below 4h at this resolution");
  int offset_cells = (res - side_cells) / 2;
  // level-l bumps reach side/4 outside the base square; the margin holds them
  if (offset_cells * 4 < side_cells)
    fail(Err::LevelTooDeep, "koch_flake: bumps exceed the box margin");
  std::vector<P2> poly = koch_polygon(level, h, side_cells, offset_cells);
  DomainMask m{g, std::vector<uint8_t>(size_t(g.cells()), 0)};
  rasterize_rectilinear(g, poly, m.inside);
  return finish(std::move(m));
}

DomainMask comb_domain(int resolution, int teeth, double tooth_width, double corridor_width) {
  double h = 1.0 / resolution;
  if (teeth < 0) fail(Err::InvalidArgument, "comb_domain: negative teeth");
  if (teeth > 0 && (tooth_width < 3 * h || corridor_width < 3 * h))
    fail(Err::InvalidArgument, "comb_domain: widths must be >= 3h");
  GridSpace g = build_space(2, {resolution, resolution}, h, {0.0, 0.0});
  DomainMask m{g, std::vector<uint8_t>(size_t(g.cells()), 0)};
  double wall = 2 * h;
  double lo = wall, hi = 1.0 - wall;
  double room = teeth > 0 ? ((hi - lo) - teeth * tooth_width) / (teeth + 1) : (hi - lo);
  if (teeth > 0 && room < 3 * h)
    fail(Err::InvalidArgument, "comb_domain: rooms between teeth below 3h");
  for (int y = 0; y < g.extent[1]; ++y)
    for (int x = 0; x < g.extent[0]; ++x) {
      double xc = (x + 0.5) * h, yc = (y + 0.5) * h;
      if (!(xc > lo && xc < hi && yc > lo && yc < hi)) continue;
      bool in_slit = false;
      if (teeth > 0 && yc > lo + corridor_width) {
        for (int t = 0; t < teeth; ++t) {
          double sx = lo + (t + 1) * room + t * tooth_width;
          if (xc > sx && xc < sx + tooth_width) {
            in_slit = true;
            break;
          }
        }
      }
      if (!in_slit) m.inside[size_t(g.id(x, y))] = 1;
    }
  return finish(std::move(m));
}

namespace {

std::vector<std::array<double, 3>> fibonacci_sphere(int n, double radius) {
  std::vector<std::array<double, 3>> pts;
  pts.reserve(size_t(n));
  const double ga = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double th = ga * i;
    pts.push_back({radius * r * std::cos(th), radius * r * std::sin(th), radius * z});
  }
  return pts;
}

double covering_radius(const std::vector<std::array<double, 3>>& pts, double radius) {
  // max over a dense deterministic probe set of the distance to {p_i}
  auto probes = fibonacci_sphere(20000, radius);
  double worst = 0;
  for (const auto& q : probes) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      double d = std::hypot(p[0] - q[0], std::hypot(p[1] - q[1], p[2] - q[2]));
      best = std::min(best, d);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double seg_point_dist(const std::array<double, 3>& a, const std::array<double, 3>& b,
                      double px, double py, double pz) {
  double abx = b[0] - a[0], aby = b[1] - a[1], abz = b[2] - a[2];
  double apx = px - a[0], apy = py - a[1], apz = pz - a[2];
  double t = (apx * abx + apy * aby + apz * abz) / (abx * abx + aby * aby + abz * abz);
  t = std::clamp(t, 0.0, 1.0);
  double dx = apx - t * abx, dy = apy - t * aby, dz = apz - t * abz;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double seg_seg_dist(const std::array<double, 3>& a1, const std::array<double, 3>& b1,
                    const std::array<double, 3>& a2, const std::array<double, 3>& b2) {
  // sampled lower envelope; tubes are short and far apart so this suffices
  double best = std::numeric_limits<double>::infinity();
  const int K = 24;
  for (int i = 0; i <= K; ++i) {
    double t = double(i) / K;
    double px = a1[0] + t * (b1[0] - a1[0]);
    double py = a1[1] + t * (b1[1] - a1[1]);
    double pz = a1[2] + t * (b1[2] - a1[2]);
    best = std::min(best, seg_point_dist(a2, b2, px, py, pz));
  }
  for (int i = 0; i <= K; ++i) {
    double t = double(i) / K;
    double px = a2[0] + t * (b2[0] - a2[0]);
    double py = a2[1] + t * (b2[1] - a2[1]);
    double pz = a2[2] + t * (b2[2] - a2[2]);
    best = std::min(best, seg_point_dist(a1, b1, px, py, pz));
  }
  return best;
}

}  // namespace

TentacleInfo tentacle_layout(const DomainSpec& spec) {
  if (spec.c_john < 1) fail(Err::InvalidArgument, "tentacle_counterexample: c must be >= 1");
  TentacleInfo info;
  info.cap_radius = 1.0 / (2 * spec.c_john);
  double target = info.cap_radius * spec.cover_slack;
  const double R = 1.5;
  int n = int(std::ceil(4 * kPi * R * R / (target * target)));
  for (int iter = 0; iter < 8; ++iter) {
    auto pts = fibonacci_sphere(n, R);
    double cov = covering_radius(pts, R);
    if (cov <= target * 1.05) {
      info.count = n;
      info.covering_radius = cov;
      info.points = std::move(pts);
      return info;
    }
    n = int(n * 1.3) + 1;
  }
  fail(Err::GenerationFailed, "tentacle_counterexample: cap cover did not converge");
}

namespace {

DomainMask gen_tentacle(const DomainSpec& s) {
  if (s.resolution < 48)
    fail(Err::GenerationFailed,
         "tentacle_counterexample: resolution too low; need >= 48 cells per axis");
  const double world = 4.2;
  double h = s.h > 0 ? s.h : world / s.resolution;
  double w = s.tentacle_radius > 0 ? s.tentacle_radius : 2 * h;
  GridSpace g = build_space(3, {s.resolution, s.resolution, s.resolution}, h,
                            {-world / 2, -world / 2, -world / 2});
  TentacleInfo info = tentacle_layout(s);

  // straight radial tubes from the 3/2-sphere through the 2-sphere
  std::vector<std::array<double, 3>> seg_a(info.points.size()), seg_b(info.points.size());
  for (size_t i = 0; i < info.points.size(); ++i) {
    const auto& p = info.points[i];
    double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    std::array<double, 3> u{p[0] / norm, p[1] / norm, p[2] / norm};
    double r_in = 1.5 + w;  // inner cap grazes the 3/2-sphere
    double r_out = 2.0 + 2 * h;
    seg_a[i] = {u[0] * r_in, u[1] * r_in, u[2] * r_in};
    seg_b[i] = {u[0] * r_out, u[1] * r_out, u[2] * r_out};
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < seg_a.size(); ++i)
    for (size_t j = i + 1; j < seg_a.size(); ++j)
      min_gap = std::min(min_gap, seg_seg_dist(seg_a[i], seg_b[i], seg_a[j], seg_b[j]));
  double need = 2 * w + 3 * h;
  if (min_gap < need) {
    int feasible = int(std::ceil(s.resolution * need / std::max(min_gap, 1e-12)));
    fail(Err::GenerationFailed,
         "tentacle_counterexample: tubes not disjoint at this resolution; "
         "minimal feasible resolution ~ " + std::to_string(feasible));
  }

  DomainMask m{g, std::vector<uint8_t>(size_t(g.cells()), 0)};
  for (int z = 0; z < g.extent[2]; ++z)
    for (int y = 0; y < g.extent[1]; ++y)
      for (int x = 0; x < g.extent[0]; ++x) {
        double xc = g.origin[0] + (x + 0.5) * h;
        double yc = g.origin[1] + (y + 0.5) * h;
        double zc = g.origin[2] + (z + 0.5) * h;
        if (xc * xc + yc * yc + zc * zc >= 4.0) continue;
        m.inside[size_t(g.id(x, y, z))] = 1;
      }
  // carve tubes cell-by-cell over their bounding boxes
  for (size_t i = 0; i < seg_a.size(); ++i) {
    const auto& a = seg_a[i];
    const auto& b = seg_b[i];
    int lo[3], hi[3];
    for (int k = 0; k < 3; ++k) {
      double mn = std::min(a[k], b[k]) - w - h, mx = std::max(a[k], b[k]) + w + h;
      lo[k] = std::max(0, int(std::floor((mn - g.origin[k]) / h)));
      hi[k] = std::min(g.extent[k] - 1, int(std::ceil((mx - g.origin[k]) / h)));
    }
    for (int z = lo[2]; z <= hi[2]; ++z)
      for (int y = lo[1]; y <= hi[1]; ++y)
        for (int x = lo[0]; x <= hi[0]; ++x) {
          double xc = g.origin[0] + (x + 0.5) * h;
          double yc = g.origin[1] + (y + 0.5) * h;
          double zc = g.origin[2] + (z + 0.5) * h;
          if (seg_point_dist(a, b, xc, yc, zc) < w) m.inside[size_t(g.id(x, y, z))] = 0;
        }
  }
  return finish(std::move(m));
}

}  // namespace

DomainMask generate(const DomainSpec& spec) {
  switch (spec.kind) {
    case DomainKind::Disk: return gen_disk(spec);
    case DomainKind::Square: return gen_square(spec);
    case DomainKind::KochFlake: return koch_flake(spec.level, pick_h(spec));
    case DomainKind::Comb:
      return comb_domain(spec.resolution, spec.teeth, spec.tooth_width, spec.corridor_width);
    case DomainKind::Porous: return gen_porous(spec);
    case DomainKind::CarpetComplement: return gen_carpet(spec);
    case DomainKind::TentacleCounterexample: return gen_tentacle(spec);
    case DomainKind::Import: return read_mask(spec.import_path);
  }
  fail(Err::InvalidArgument, "generate: unknown kind");
}

std::string kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::Disk: return "disk";
    case DomainKind::Square: return "square";
    case DomainKind::KochFlake: return "koch_flake";
    case DomainKind::Comb: return "comb";
    case DomainKind::Porous: return "porous";
    case DomainKind::CarpetComplement: return "carpet_complement";
    case DomainKind::TentacleCounterexample: return "tentacle_counterexample";
    case DomainKind::Import: return "import";
  }
  return "unknown";
}

DomainKind kind_from_name(const std::string& name) {
  for (DomainKind k : {DomainKind::Disk, DomainKind::Square, DomainKind::KochFlake,
                       DomainKind::Comb, DomainKind::Porous, DomainKind::CarpetComplement,
                       DomainKind::TentacleCounterexample, DomainKind::Import})
    if (kind_name(k) == name) return k;
  fail(Err::ConfigError, "unknown domain kind: " + name);
}

DomainSpec spec_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  DomainSpec s;
  s.kind = kind_from_name(j.at("kind").get<std::string>());
  s.resolution = j.value("resolution", s.resolution);
  s.h = j.value("h", s.h);
  s.radius = j.value("radius", s.radius);
  s.side = j.value("side", s.side);
  s.world_size = j.value("world_size", s.world_size);
  s.level = j.value("level", s.level);
  s.teeth = j.value("teeth", s.teeth);
  s.tooth_width = j.value("tooth_width", s.tooth_width);
  s.corridor_width = j.value("corridor_width", s.corridor_width);
  s.holes = j.value("holes", s.holes);
  s.hole_radius = j.value("hole_radius", s.hole_radius);
  s.seed = j.value("seed", s.seed);
  s.carpet_level = j.value("carpet_level", s.carpet_level);
  s.c_john = j.value("c", s.c_john);
  s.tentacle_radius = j.value("tentacle_radius", s.tentacle_radius);
  s.cover_slack = j.value("cover_slack", s.cover_slack);
  s.import_path = j.value("import_path", s.import_path);
  return s;
}

std::string spec_to_json_text(const DomainSpec& s) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(s.kind);
  j["resolution"] = s.resolution;
  j["h"] = s.h;
  j["radius"] = s.radius;
  j["side"] = s.side;
  j["world_size"] = s.world_size;
  j["level"] = s.level;
  j["teeth"] = s.teeth;
  j["tooth_width"] = s.tooth_width;
  j["corridor_width"] = s.corridor_width;
  j["holes"] = s.holes;
  j["hole_radius"] = s.hole_radius;
  j["seed"] = s.seed;
  j["carpet_level"] = s.carpet_level;
  j["c"] = s.c_john;
  j["tentacle_radius"] = s.tentacle_radius;
  j["cover_slack"] = s.cover_slack;
  j["import_path"] = s.import_path;
  return j.dump(2);
}

}  // namespace vb
