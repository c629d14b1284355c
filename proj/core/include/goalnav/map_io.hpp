#pragma once

#include <string>

#include "goalnav/grid.hpp"

namespace goalnav {

// Binary (P5) 8-bit PGM snapshot plus a sidecar "<path>.hdr" text file with
// origin and cell size. The byte layout is fixed so golden tests can diff
// snapshots directly.
void write_pgm(const std::string& path, const BoolGrid& grid, double origin_x,
               double origin_y, double cell_size);

// Float channel scaled from [lo, hi] to [0, 255].
void write_pgm(const std::string& path, const FloatGrid& grid, double lo,
               double hi, double origin_x, double origin_y, double cell_size);

}  // namespace goalnav
