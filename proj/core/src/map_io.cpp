#include "goalnav/map_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace goalnav {
namespace {

void write_header_sidecar(const std::string& path, double origin_x,
                          double origin_y, double cell_size) {
  std::ofstream hdr(path + ".hdr");
  if (!hdr) throw std::runtime_error("write_pgm: cannot open " + path + ".hdr");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "origin_m %.6f %.6f\ncell_size_m %.6f\n",
                origin_x, origin_y, cell_size);
  hdr << buf;
}

void write_bytes(const std::string& path, int w, int h,
                 const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << w << " " << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

void write_pgm(const std::string& path, const BoolGrid& grid, double origin_x,
               double origin_y, double cell_size) {
  std::vector<std::uint8_t> bytes(grid.size());
  for (std::size_t i = 0; i < bytes.size(); ++i)
    bytes[i] = grid.data()[i] ? 255 : 0;
  write_bytes(path, grid.width(), grid.height(), bytes);
  write_header_sidecar(path, origin_x, origin_y, cell_size);
}

void write_pgm(const std::string& path, const FloatGrid& grid, double lo,
               double hi, double origin_x, double origin_y, double cell_size) {
  const double span = std::max(hi - lo, 1e-12);
  std::vector<std::uint8_t> bytes(grid.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const double t = std::clamp((grid.data()[i] - lo) / span, 0.0, 1.0);
    bytes[i] = static_cast<std::uint8_t>(std::lround(t * 255.0));
  }
  write_bytes(path, grid.width(), grid.height(), bytes);
  write_header_sidecar(path, origin_x, origin_y, cell_size);
}

}  // namespace goalnav
