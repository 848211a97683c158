#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vb/grid.hpp"

namespace vb {

enum class DomainKind {
  Disk,
  Square,
  KochFlake,
  Comb,
  Porous,
  CarpetComplement,
  TentacleCounterexample,
  Import,
};

// Generation is a pure function of the spec: equal specs give bit-identical
// masks. All generators rasterize by cell-center membership.
struct DomainSpec {
  DomainKind kind = DomainKind::Square;
  int resolution = 256;  // cells per axis
  double h = 0.0;        // 0 -> world_size / resolution

  // disk / square
  double radius = 0.45;      // disk, in units of world_size
  double side = 0.9;         // square
  double world_size = 1.0;   // box side in world units (2D kinds)

  // koch_flake
  int level = 1;

  // comb
  int teeth = 8;
  double tooth_width = 1.0 / 32;
  double corridor_width = 0.4;

  // porous
  int holes = 12;
  double hole_radius = 0.03;
  uint64_t seed = 1;

  // carpet_complement
  int carpet_level = 2;

  // tentacle_counterexample (3D; box [-2.1, 2.1]^3)
  double c_john = 1.0;
  double tentacle_radius = 0.0;  // 0 -> 2h
  double cover_slack = 0.7;      // caps of radius cover_slack/(2c) realize the 1/(2c) cover

  // import
  std::string import_path;
};

std::string kind_name(DomainKind k);
DomainKind kind_from_name(const std::string& name);

DomainSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const DomainSpec& spec);

// Validated mask (connected, proper). GenerationFailed / ConnectivityFailed /
// LevelTooDeep per generator contracts.
DomainMask generate(const DomainSpec& spec);

// Rooms-and-corridors square: `teeth` slits from the top edge, connected
// along a bottom corridor. Widths below 3h are rejected.
DomainMask comb_domain(int resolution, int teeth, double tooth_width, double corridor_width);

// Quadric Koch-type flake interior at the given subdivision level.
DomainMask koch_flake(int level, double h);

// Endpoints of the generated tentacles (unit directions scaled to |p|=3/2),
// exposed for tests of the counterexample geometry.
struct TentacleInfo {
  int count = 0;
  double cap_radius = 0.0;       // 1/(2c), the required cover radius
  double covering_radius = 0.0;  // realized covering radius of {p_i}
  std::vector<std::array<double, 3>> points;
};
TentacleInfo tentacle_layout(const DomainSpec& spec);

}  // namespace vb
