#include "vb/maskio.hpp"

#include <cstring>
#include <fstream>

#include "json.hpp"

namespace vb {

namespace {

using nlohmann::json;

std::string sidecar_path(const std::string& path) { return path + ".json"; }

json space_header(const GridSpace& g, const std::string& dtype) {
  json j;
  j["dim"] = g.dim;
  j["extent"] = std::vector<int>(g.extent.begin(), g.extent.begin() + g.dim);
  j["h"] = g.h;
  j["origin"] = std::vector<double>(g.origin.begin(), g.origin.begin() + g.dim);
  j["dtype"] = dtype;
  j["order"] = "C";
  return j;
}

void write_sidecar(const GridSpace& g, const std::string& dtype, const std::string& path) {
  std::ofstream out(sidecar_path(path));
  if (!out) fail(Err::IoError, "cannot write sidecar " + sidecar_path(path));
  out << space_header(g, dtype).dump(2) << "\n";
}

GridSpace read_sidecar(const std::string& path, const std::string& want_dtype) {
  std::ifstream in(sidecar_path(path));
  if (!in) fail(Err::IoError, "missing sidecar " + sidecar_path(path));
  json j = json::parse(in);
  if (want_dtype != "" && j.at("dtype").get<std::string>() != want_dtype)
    fail(Err::IoError, "sidecar dtype mismatch for " + path);
  return build_space(j.at("dim").get<int>(), j.at("extent").get<std::vector<int>>(),
                     j.at("h").get<double>(), j.at("origin").get<std::vector<double>>());
}

}  // namespace

void write_pbm(const DomainMask& mask, const std::string& path) {
  const GridSpace& g = mask.space;
  if (g.dim != 2) fail(Err::InvalidArgument, "PBM export is 2D only");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot write " + path);
  out << "P4\n" << g.extent[0] << " " << g.extent[1] << "\n";
  const int row_bytes = (g.extent[0] + 7) / 8;
  std::vector<uint8_t> row(size_t(row_bytes));
  for (int y = 0; y < g.extent[1]; ++y) {
    std::fill(row.begin(), row.end(), 0);
    for (int x = 0; x < g.extent[0]; ++x)
      if (mask.inside[size_t(g.id(x, y))]) row[size_t(x / 8)] |= uint8_t(0x80 >> (x % 8));
    out.write(reinterpret_cast<const char*>(row.data()), row_bytes);
  }
  write_sidecar(g, "bit", path);
}

DomainMask read_pbm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot read " + path);
  std::string magic;
  in >> magic;
  if (magic != "P4") fail(Err::IoError, path + ": not a P4 PBM");
  int w = 0, hgt = 0;
  in >> w >> hgt;
  in.get();  // single whitespace after the header
  GridSpace g;
  std::ifstream side(sidecar_path(path));
  if (side.good()) {
    side.close();
    g = read_sidecar(path, "");
    if (g.extent[0] != w || g.extent[1] != hgt)
      fail(Err::IoError, path + ": sidecar extent mismatch");
  } else {
    g = build_space(2, {w, hgt}, 1.0, {0.0, 0.0});
  }
  DomainMask mask;
  mask.space = g;
  mask.inside.assign(size_t(g.cells()), 0);
  const int row_bytes = (w + 7) / 8;
  std::vector<uint8_t> row(size_t(row_bytes));
  for (int y = 0; y < hgt; ++y) {
    in.read(reinterpret_cast<char*>(row.data()), row_bytes);
    if (!in) fail(Err::IoError, path + ": truncated PBM raster");
    for (int x = 0; x < w; ++x)
      mask.inside[size_t(g.id(x, y))] = (row[size_t(x / 8)] >> (7 - x % 8)) & 1;
  }
  return mask;
}

void write_raw_mask(const DomainMask& mask, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(mask.inside.data()),
            std::streamsize(mask.inside.size()));
  write_sidecar(mask.space, "u8", path);
}

DomainMask read_raw_mask(const std::string& path) {
  GridSpace g = read_sidecar(path, "u8");
  DomainMask mask;
  mask.space = g;
  mask.inside.assign(size_t(g.cells()), 0);
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot read " + path);
  in.read(reinterpret_cast<char*>(mask.inside.data()), std::streamsize(mask.inside.size()));
  if (!in) fail(Err::IoError, path + ": truncated raw mask");
  return mask;
}

void write_raw_field(const GridSpace& space, const std::vector<double>& values,
                     const std::string& path) {
  if (int64_t(values.size()) != space.cells())
    fail(Err::InvalidArgument, "field size does not match space");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(values.data()),
            std::streamsize(values.size() * sizeof(double)));
  write_sidecar(space, "f64", path);
}

std::vector<double> read_raw_field(const GridSpace& space, const std::string& path) {
  GridSpace g = read_sidecar(path, "f64");
  if (g.cells() != space.cells()) fail(Err::IoError, path + ": field extent mismatch");
  std::vector<double> values(size_t(space.cells()));
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot read " + path);
  in.read(reinterpret_cast<char*>(values.data()),
          std::streamsize(values.size() * sizeof(double)));
  if (!in) fail(Err::IoError, path + ": truncated raw field");
  return values;
}

void write_mask(const DomainMask& mask, const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".pbm")
    write_pbm(mask, path);
  else
    write_raw_mask(mask, path);
}

DomainMask read_mask(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".pbm") return read_pbm(path);
  return read_raw_mask(path);
}

}  // namespace vb
