#pragma once

#include <filesystem>

#include "conedecay/planar/grid.hpp"
#include "conedecay/planar/solver.hpp"

namespace conedecay::planar {

/// Flat little-endian layout:
///   char[4] "WSNP", uint32 version (1), uint64 n_r_nodes, uint64 n_theta,
///   float64 t, float64 r_min, float64 r_max,
///   float64 u[n_r_nodes * n_theta], float64 v[n_r_nodes * n_theta]   (row-major, r then θ)
struct Snapshot {
  std::uint64_t n_r_nodes = 0;
  std::uint64_t n_theta = 0;
  double t = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<double> u, v;
};

void write_snapshot(const std::filesystem::path& path, const PolarGrid2D& grid, const PlanarState& s);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace conedecay::planar
