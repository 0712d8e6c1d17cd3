#pragma once

#include <string>

#include "homoglab/grid.hpp"

namespace homoglab {

// Binary field files, all numbers little-endian.
//
// PGF1: "PGF1", u32 N, u32 d, u32 flag (0 periodic cell, 1 box), u32 M_1..M_N,
//       box only: f64 lower_1..lower_N, upper_1..upper_N; then prod(M) * d f64
//       samples, component fastest, row-major over the grid.
// PGF2: "PGF2", u32 d, x-grid block, y-grid block, then samples [x][y][c].
//       A grid block is u32 N, u32 flag, u32 M_1..M_N and, for a box, the
//       2N corner coordinates as above.
//
// Readers throw FormatError on a wrong magic or version byte, truncated data,
// trailing bytes or implausible dimensions, and IoError when the file cannot
// be opened.
void write_field(const std::string& path, const GridField& f);
GridField read_field(const std::string& path);

void write_two_scale(const std::string& path, const TwoScaleField& f);
TwoScaleField read_two_scale(const std::string& path);

}  // namespace homoglab
