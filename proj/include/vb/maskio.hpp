#pragma once

#include <string>
#include <vector>

#include "vb/dfield.hpp"
#include "vb/grid.hpp"

namespace vb {

// 2D masks: PBM P4 (bit-packed, row-major, 1 = inside), bit-exact round trip.
// The world geometry (h, origin) is carried by a JSON sidecar next to the
// file ("<path>.json"); loaders fall back to h = 1, origin = 0 without one.
void write_pbm(const DomainMask& mask, const std::string& path);
DomainMask read_pbm(const std::string& path);

// 3D masks and all fields: raw little-endian arrays (u8 masks, f64 fields)
// with a JSON sidecar header {dim, extent, h, origin, dtype, order:"C"}.
// Linear index: x fastest, i = x + nx*(y + ny*z).
void write_raw_mask(const DomainMask& mask, const std::string& path);
DomainMask read_raw_mask(const std::string& path);

void write_raw_field(const GridSpace& space, const std::vector<double>& values,
                     const std::string& path);
std::vector<double> read_raw_field(const GridSpace& space, const std::string& path);

// Dispatch on extension: .pbm (2D) or .raw (+ sidecar).
void write_mask(const DomainMask& mask, const std::string& path);
DomainMask read_mask(const std::string& path);

}  // namespace vb
